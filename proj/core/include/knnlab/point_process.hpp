#pragma once

#include <cstdint>
#include <vector>

#include "knnlab/geometry.hpp"

namespace knnlab {

enum class PointModel { fixed, poisson };

struct PointSet {
    PointModel model = PointModel::fixed;
    double intensity = 0.0;       // N: fixed count or Poisson mean
    std::uint64_t seed = 0;
    std::vector<Point> points;

    std::size_t count() const { return points.size(); }  // h(N)
};

// Exactly n i.i.d. uniform points on the unit square.
PointSet sample_fixed(std::uint64_t n, std::uint64_t seed);

// Homogeneous Poisson process of intensity N on the unit square: count drawn
// from Poisson(N), positions i.i.d. uniform.
PointSet sample_poisson(double N, std::uint64_t seed);

// Points within the closed disk.
std::size_t region_count(const PointSet& points, const Disk& disk);
std::size_t region_count(const std::vector<Point>& points, const Disk& disk);

// Exact P(Poisson(N) in [N - sqrt(pi*N/2), N + sqrt(pi*N/2)]) by log-space
// summation of the pmf over the closed integer window
// [ceil(N - w), floor(N + w)]. Absolute error below 1e-12.
double poisson_window_probability(double N);

// Central-limit reference for the same window: 2*Phi(sqrt(pi/2)) - 1.
double poisson_window_normal_limit();

}  // namespace knnlab
