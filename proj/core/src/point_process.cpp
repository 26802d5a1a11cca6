#include "knnlab/point_process.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "knnlab/rng.hpp"

namespace knnlab {

namespace {

// Inversion by sequential search on the pmf recurrence. O(mean) expected.
std::uint64_t poisson_inversion(SplitMix64& rng, double mean) {
    const double u = rng.next_double();
    double p = std::exp(-mean);
    double cum = p;
    std::uint64_t k = 0;
    while (u > cum) {
        ++k;
        p *= mean / static_cast<double>(k);
        cum += p;
        if (p == 0.0) break;  // u in the far tail beyond double resolution
    }
    return k;
}

// PTRS: transformed rejection with squeeze (Hormann 1993), valid for
// mean >= 10. Constants are the published ones.
std::uint64_t poisson_ptrs(SplitMix64& rng, double mean) {
    const double smu = std::sqrt(mean);
    const double log_mu = std::log(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            kf * log_mu - mean - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

}  // namespace

std::uint64_t poisson_draw(SplitMix64& rng, double mean) {
    if (mean < 0.0) throw std::domain_error("Poisson mean must be nonnegative");
    if (mean == 0.0) return 0;
    return mean <= 30.0 ? poisson_inversion(rng, mean) : poisson_ptrs(rng, mean);
}

PointSet sample_fixed(std::uint64_t n, std::uint64_t seed) {
    PointSet ps;
    ps.model = PointModel::fixed;
    ps.intensity = static_cast<double>(n);
    ps.seed = seed;
    SplitMix64 rng(seed);
    ps.points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = rng.next_double();
        const double y = rng.next_double();
        ps.points.push_back({x, y});
    }
    return ps;
}

PointSet sample_poisson(double N, std::uint64_t seed) {
    if (N <= 0.0) throw std::domain_error("Poisson intensity must be positive");
    SplitMix64 rng(seed);
    const std::uint64_t n = poisson_draw(rng, N);
    PointSet ps;
    ps.model = PointModel::poisson;
    ps.intensity = N;
    ps.seed = seed;
    ps.points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = rng.next_double();
        const double y = rng.next_double();
        ps.points.push_back({x, y});
    }
    return ps;
}

std::size_t region_count(const std::vector<Point>& points, const Disk& disk) {
    std::size_t c = 0;
    const double r2 = disk.radius * disk.radius;
    for (const Point& p : points) {
        if (dist2(p, disk.center) <= r2) ++c;
    }
    return c;
}

std::size_t region_count(const PointSet& points, const Disk& disk) {
    return region_count(points.points, disk);
}

double poisson_window_probability(double N) {
    if (N <= 0.0) throw std::domain_error("N must be positive");
    const double w = std::sqrt(std::numbers::pi * N / 2.0);
    const auto lo = static_cast<long long>(std::ceil(N - w));
    const auto hi = static_cast<long long>(std::floor(N + w));
    const double log_n = std::log(N);
    double sum = 0.0;
    for (long long j = std::max(0LL, lo); j <= hi; ++j) {
        const double jd = static_cast<double>(j);
        sum += std::exp(jd * log_n - N - std::lgamma(jd + 1.0));
    }
    return sum;
}

double poisson_window_normal_limit() {
    // 2*Phi(sqrt(pi/2)) - 1 = erf(sqrt(pi)/2)
    return std::erf(std::sqrt(std::numbers::pi) / 2.0);
}

}  // namespace knnlab
