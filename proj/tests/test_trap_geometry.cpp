#include <doctest.h>

#include <cmath>
#include <numbers>

#include "knnlab/errors.hpp"
#include "knnlab/trap_geometry.hpp"

using namespace knnlab;

namespace {
// Worst-case probe distance oracle: boundary probe midway between two
// adjacent sub-disk centers, law of cosines at offset pi/L.
double worst_probe_distance(double a, int L) {
    const double rho = 1.0 + 2.0 * a;
    const double ring = 1.0 + 1.5 * a;
    const double d = std::numbers::pi / L;
    return std::sqrt(rho * rho + ring * ring - 2.0 * rho * ring * std::cos(d));
}
}  // namespace

TEST_CASE("half_chord_angle values and monotonicity") {
    CHECK(half_chord_angle(3.6) == doctest::Approx(0.5701928805054924).epsilon(1e-12));
    CHECK(half_chord_angle(1.0) == doctest::Approx(0.4027158415806616).epsilon(1e-12));
    // supremum 2*arcsin(1/3) as a grows
    const double sup = 2.0 * std::asin(1.0 / 3.0);
    CHECK(sup == doctest::Approx(0.6796738189082439).epsilon(1e-12));
    CHECK(half_chord_angle(1e9) < sup);
    CHECK(half_chord_angle(1e9) == doctest::Approx(sup).epsilon(1e-8));

    double prev = 0.0;
    for (double a = 0.05; a <= 20.0; a += 0.05) {
        const double cur = half_chord_angle(a);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THROWS_AS(half_chord_angle(0.0), std::domain_error);
    CHECK_THROWS_AS(half_chord_angle(-1.0), std::domain_error);
}

TEST_CASE("l_max values") {
    CHECK(l_max(3.6) == 11);
    CHECK(l_max(1.0) == 15);
    CHECK(l_max(2.0) == 12);
    CHECK_THROWS_AS(l_max(-0.5), std::domain_error);

    int prev = l_max(0.05);
    for (double a = 0.1; a <= 50.0; a += 0.05) {
        const int cur = l_max(a);
        CHECK(cur <= prev);
        CHECK(cur >= 9);  // floor(pi / arcsin(1/3))
        prev = cur;
    }
}

TEST_CASE("l_min_upper values and bound against l_max") {
    CHECK(l_min_upper(3.6) == 6);
    CHECK(l_min_upper(1.0) == 8);
    CHECK(l_min_upper(2.0) == 7);
    for (double a = 0.05; a <= 20.0; a += 0.05) {
        CHECK(l_min_upper(a) <= l_max(a));
    }
}

TEST_CASE("build_trap places sub-disk centers on the ring") {
    SUBCASE("single sub-disk at phase 0") {
        const Trap t = build_trap({0.5, 0.5}, 0.01, 1.0, 1);
        REQUIRE(t.subdisk_centers.size() == 1);
        CHECK(t.subdisk_centers[0].x == doctest::Approx(0.525).epsilon(1e-12));
        CHECK(t.subdisk_centers[0].y == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("a=3.6, L=11") {
        const Trap t = build_trap({0.5, 0.5}, 0.01, 3.6, 11);
        CHECK(t.subdisk_centers[0].x == doctest::Approx(0.564).epsilon(1e-12));
        CHECK(t.subdisk_centers[0].y == doctest::Approx(0.5).epsilon(1e-12));
        // non-overlap: sub-disk radius is a*r/2, so centers must sit >= a*r apart
        for (std::size_t i = 0; i < t.subdisk_centers.size(); ++i) {
            for (std::size_t j = i + 1; j < t.subdisk_centers.size(); ++j) {
                CHECK(dist(t.subdisk_centers[i], t.subdisk_centers[j]) >= 3.6 * 0.01 - 1e-12);
            }
        }
        // each sub-disk inside the annulus [(1+a)r, (1+2a)r]
        for (const Point& y : t.subdisk_centers) {
            const double d = dist(y, t.center);
            CHECK(d - t.a * t.r / 2.0 >= (1.0 + t.a) * t.r - 1e-12);
            CHECK(d + t.a * t.r / 2.0 <= (1.0 + 2.0 * t.a) * t.r + 1e-12);
        }
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(build_trap({0.5, 0.5}, 0.01, 3.6, 12), infeasible_error);
        // outer radius 8.2 * 0.1 = 0.82 does not fit around (0.5, 0.5)
        CHECK_THROWS_AS(build_trap({0.5, 0.5}, 0.1, 3.6, 5), infeasible_error);
    }
    SUBCASE("L = l_max feasible, l_max + 1 rejected, sampled a grid") {
        for (double a : {0.2, 0.7, 1.0, 2.0, 3.6, 8.0}) {
            const int lm = l_max(a);
            const double r = 0.4 / (1.0 + 2.0 * a);
            const Trap t = build_trap({0.5, 0.5}, r, a, lm);
            const double min_sep = a * r;
            for (std::size_t i = 0; i < t.subdisk_centers.size(); ++i) {
                for (std::size_t j = i + 1; j < t.subdisk_centers.size(); ++j) {
                    CHECK(dist(t.subdisk_centers[i], t.subdisk_centers[j]) >= min_sep - 1e-12);
                }
            }
            CHECK_THROWS_AS(build_trap({0.5, 0.5}, r, a, lm + 1), infeasible_error);
        }
    }
}

TEST_CASE("grid_capacity") {
    SUBCASE("a=3.6, r=0.01") {
        const GridPlacement g = grid_capacity(3.6, 0.01);
        CHECK(g.capacity == 36);
        CHECK(g.centers.size() == 36);
    }
    SUBCASE("a=1, r=0.05") { CHECK(grid_capacity(1.0, 0.05).capacity == 9); }
    SUBCASE("trap larger than the square") {
        const GridPlacement g = grid_capacity(3.6, 0.1);  // edge 1.64 > 1
        CHECK(g.capacity == 0);
        CHECK(g.centers.empty());
    }
    SUBCASE("placements are disjoint and inside the square") {
        const double a = 1.0, r = 0.04;
        const GridPlacement g = grid_capacity(a, r);
        const double outer = (1.0 + 2.0 * a) * r;
        const double min_center_dist = 2.0 * outer;
        for (std::size_t i = 0; i < g.centers.size(); ++i) {
            const Disk d{g.centers[i], outer};
            CHECK(d.inside_unit_square());
            for (std::size_t j = i + 1; j < g.centers.size(); ++j) {
                CHECK(dist(g.centers[i], g.centers[j]) >= min_center_dist - 1e-12);
            }
        }
    }
}

TEST_CASE("containment certificate at a = 3.6") {
    CertificateOptions opts;
    opts.num_angles = 100000;
    CHECK(containment_certificate(3.6, 6, opts));
    CHECK_FALSE(containment_certificate(3.6, 4, opts));
    CHECK(containment_certificate(3.6, 11, opts));
    CHECK_THROWS_AS(containment_certificate(3.6, 12, opts), infeasible_error);

    // closed-form worst-angle oracle agrees with the sweep verdict
    const double limit = 1.5 * 3.6;
    CHECK(worst_probe_distance(3.6, 6) < limit);
    CHECK(worst_probe_distance(3.6, 5) < limit);
    CHECK(worst_probe_distance(3.6, 4) > limit);
    CHECK(worst_probe_distance(3.6, 4) == doctest::Approx(5.829414399977066).epsilon(1e-12));
    CHECK(worst_probe_distance(3.6, 5) == doctest::Approx(4.825513057738578).epsilon(1e-12));
    CHECK(worst_probe_distance(3.6, 6) == doctest::Approx(4.159564114037109).epsilon(1e-12));
}

TEST_CASE("certificate monotone in L on a sampled grid") {
    CertificateOptions opts;
    opts.num_angles = 2048;
    for (double a : {0.5, 1.0, 2.0, 3.6, 6.0, 12.0}) {
        bool passed = false;
        for (int L = 1; L <= l_max(a); ++L) {
            const bool cur = containment_certificate(a, L, opts);
            if (passed) CHECK(cur);  // once true, stays true
            passed = passed || cur;
        }
        CHECK(passed);
    }
}

TEST_CASE("exterior probe levels do not change the verdict") {
    CertificateOptions base;
    base.num_angles = 4096;
    CertificateOptions ext = base;
    ext.exterior_levels = 8;
    ext.exterior_max_offset = 7.2;
    for (int L : {4, 5, 6, 11}) {
        CHECK(containment_certificate(3.6, L, base) == containment_certificate(3.6, L, ext));
    }
}

TEST_CASE("numeric_l_min") {
    CHECK(numeric_l_min(3.6) == 5);
    CHECK(numeric_l_min(3.6) <= 6);
    CHECK(numeric_l_min(1.0) <= 8);
    for (double a = 0.05; a <= 20.0; a += 0.41) {
        CertificateOptions opts;
        opts.num_angles = 1024;
        CHECK(numeric_l_min(a, opts) <= l_min_upper(a));
    }
}
