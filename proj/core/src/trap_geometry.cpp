#include "knnlab/trap_geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "knnlab/errors.hpp"

namespace knnlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDistTol = 1e-12;

double half_sine(double a) {
    if (a <= 0.0) throw std::domain_error("a must be positive, got " + std::to_string(a));
    return a / (2.0 + 3.0 * a);
}
}  // namespace

double Trap::angular_spacing() const { return 2.0 * kPi / static_cast<double>(L); }

double half_chord_angle(double a) { return 2.0 * std::asin(half_sine(a)); }

int l_max(double a) {
    return static_cast<int>(std::floor(kPi / std::asin(half_sine(a))));
}

int l_min_upper(double a) {
    return static_cast<int>(std::ceil(kPi / (2.0 * std::asin(half_sine(a)))));
}

Trap build_trap(Point center, double r, double a, int L, double phase) {
    if (r <= 0.0) throw std::domain_error("r must be positive");
    if (L < 1) throw std::domain_error("L must be >= 1");
    const int lmax = l_max(a);
    if (L > lmax) {
        throw infeasible_error("L=" + std::to_string(L) + " exceeds L_max(a)=" +
                               std::to_string(lmax) + " at a=" + std::to_string(a));
    }
    Trap t;
    t.center = center;
    t.r = r;
    t.a = a;
    t.L = L;
    t.phase = phase;
    if (!t.outer_disk().inside_unit_square()) {
        throw infeasible_error("outer disk of radius " + std::to_string((1.0 + 2.0 * a) * r) +
                               " crosses the unit-square boundary");
    }
    const double ring = (1.0 + 1.5 * a) * r;
    const double beta = 2.0 * kPi / static_cast<double>(L);
    t.subdisk_centers.reserve(static_cast<size_t>(L));
    for (int i = 0; i < L; ++i) {
        const double ang = phase + beta * i;
        t.subdisk_centers.push_back({center.x + ring * std::cos(ang),
                                     center.y + ring * std::sin(ang)});
    }
    return t;
}

GridPlacement grid_capacity(double a, double r) {
    if (a <= 0.0) throw std::domain_error("a must be positive");
    if (r <= 0.0) throw std::domain_error("r must be positive");
    const double edge = 2.0 * (1.0 + 2.0 * a) * r;
    const int m = static_cast<int>(std::floor(1.0 / edge));
    GridPlacement g;
    if (m < 1) return g;  // trap larger than the square
    g.capacity = m * m;
    g.centers.reserve(static_cast<size_t>(g.capacity));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            g.centers.push_back({(i + 0.5) * edge, (j + 0.5) * edge});
        }
    }
    return g;
}

namespace {

// Worst-case distance from a probe center on the circle of radius rho to the
// nearest sub-disk center on the ring, over angular offset delta in [0, beta].
// By symmetry the relevant offset range is one half-period.
bool probe_passes(double rho, double ring, double limit, double delta) {
    const double d2 = rho * rho + ring * ring - 2.0 * rho * ring * std::cos(delta);
    return std::sqrt(d2) <= limit + kDistTol;
}

bool sweep_level(double a, int L, double rho, double probe_radius, int num_angles) {
    const double ring = 1.0 + 1.5 * a;
    const double limit = probe_radius - a / 2.0;  // |X1 - Y_i| <= probe - a/2
    const double beta = 2.0 * kPi / static_cast<double>(L);
    // Probe-to-nearest-sub-disk offset never exceeds beta/2; the midpoint is
    // the adversarial phase, appended exactly on top of the uniform grid.
    const double half = beta / 2.0;
    for (int j = 0; j <= num_angles; ++j) {
        const double delta = half * static_cast<double>(j) / static_cast<double>(num_angles);
        if (!probe_passes(rho, ring, limit, delta)) return false;
    }
    return probe_passes(rho, ring, limit, half);
}

}  // namespace

bool containment_certificate(double a, int L, const CertificateOptions& opts) {
    if (L < 1) throw std::domain_error("L must be >= 1");
    const int lmax = l_max(a);
    if (L > lmax) {
        throw infeasible_error("certificate requested for infeasible L=" + std::to_string(L) +
                               " > L_max=" + std::to_string(lmax));
    }
    if (opts.num_angles < 1) throw std::domain_error("num_angles must be >= 1");

    const double boundary = 1.0 + 2.0 * a;
    if (!sweep_level(a, L, boundary, 2.0 * a, opts.num_angles)) return false;
    for (int lvl = 1; lvl <= opts.exterior_levels; ++lvl) {
        const double off = opts.exterior_max_offset * static_cast<double>(lvl) /
                           static_cast<double>(opts.exterior_levels);
        const double rho = boundary + off;
        // Exterior probes stay tangent to the unit inner disk.
        if (!sweep_level(a, L, rho, rho - 1.0, opts.num_angles)) return false;
    }
    return true;
}

int numeric_l_min(double a, const CertificateOptions& opts) {
    const int lmax = l_max(a);
    for (int L = 1; L <= lmax; ++L) {
        if (containment_certificate(a, L, opts)) return L;
    }
    throw infeasible_error("no L up to L_max(a)=" + std::to_string(lmax) +
                           " passes the containment certificate at a=" + std::to_string(a) +
                           "; this contradicts the geometric guarantee");
}

}  // namespace knnlab
