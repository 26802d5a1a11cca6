#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "knnlab/analytics.hpp"
#include "knnlab/rng.hpp"
#include "knnlab/trap_geometry.hpp"

using namespace knnlab;

namespace {
constexpr double kPi = std::numbers::pi;

FillingParams random_params(SplitMix64& rng) {
    FillingParams p;
    p.N = 10.0 + rng.next_double() * 1e4;
    p.r = 0.001 + rng.next_double() * 0.05;
    p.a = 0.1 + rng.next_double() * 5.0;
    p.L = 1 + static_cast<int>(rng.next_u64() % 12);
    p.k = 1 + static_cast<int>(rng.next_u64() % 8);
    return p;
}
}  // namespace

TEST_CASE("p_k_filling values") {
    SUBCASE("k = 0 reduces to the outer-disk void probability") {
        const FillingParams p{100.0, 0.05, 1.0, 1, 0};
        CHECK(p_k_filling(p) == doctest::Approx(std::exp(-100.0 * kPi * 9.0 * 0.0025)).epsilon(1e-12));
    }
    SUBCASE("reference configuration") {
        const FillingParams p{50.0, 0.08, 0.5, 1, 1};
        CHECK(p_k_filling(p) == doctest::Approx(1.1326037271344132e-3).epsilon(1e-12));
        CHECK_FALSE(trap_exceeds_square(p));
    }
    SUBCASE("oversized trap is flagged") {
        CHECK(trap_exceeds_square({100.0, 0.3, 1.0, 1, 1}));
    }
}

TEST_CASE("the two algebraic forms agree to 1e-12 on 100 random draws") {
    SplitMix64 rng(404);
    for (int i = 0; i < 100; ++i) {
        const FillingParams p = random_params(rng);
        const double l1 = p_k_filling_log(p);
        const double l2 = p_k_filling_log_product_form(p);
        CHECK(std::abs(l1 - l2) <= 1e-12 * std::max(1.0, std::abs(l1)));
    }
}

TEST_CASE("ln_g") {
    CHECK(ln_g(3.6, 11) == doctest::Approx(-7.749033277182356).epsilon(1e-12));
    CHECK(ln_g(1.0, 15) == doctest::Approx(-11.58858909834137).epsilon(1e-12));
    CHECK(ln_g(2.0, 0) == doctest::Approx(-2.0 * std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("c_bound") {
    const BoundEvaluation ev = c_bound(3.6, 11);
    REQUIRE(ev.c.has_value());
    CHECK(*ev.c == doctest::Approx(0.1290483553535096).epsilon(1e-12));
    CHECK(ev.feasible);
    CHECK(ev.lmax == 11);
    CHECK(ev.lmin_upper == 6);

    const BoundEvaluation ev2 = c_bound(1.0, 15);
    CHECK(*ev2.c == doctest::Approx(0.08629178164088380).epsilon(1e-12));

    // definitional identity y(c_bound, a, L) = -1
    for (auto [a, L] : {std::pair{3.6, 11}, {1.0, 15}, {2.0, 9}, {0.7, 10}}) {
        const BoundEvaluation e = c_bound(a, L);
        REQUIRE(e.c.has_value());
        CHECK(y_exponent(*e.c, a, L) == doctest::Approx(-1.0).epsilon(1e-9));
    }
}

TEST_CASE("ln_g at l_max stays negative over the a grid") {
    for (double a = 0.05; a <= 50.0; a += 0.05) {
        const BoundEvaluation ev = c_bound(a, l_max(a));
        CHECK(ev.log_g < 0.0);
        CHECK(ev.feasible);
    }
}

TEST_CASE("y_exponent") {
    CHECK(y_exponent(0.129048355, 3.6, 11) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(y_exponent(0.0645, 3.6, 11) == doctest::Approx(-0.49985).epsilon(1e-4));
    CHECK(y_exponent(1e-15, 3.6, 11) == doctest::Approx(0.0));
}

TEST_CASE("r_star") {
    CHECK(r_star(1e4, 2, 3.6, 11) == doctest::Approx(3.370674628988639e-3).epsilon(1e-12));
    CHECK(r_star(100.0, 1, 2.0, 1, RStarVariant::paper) ==
          doctest::Approx(std::sqrt(2.0 / (100.0 * kPi * 25.0))).epsilon(1e-12));
    // stationary variant drops one count: k(L+1) - 1 in the numerator
    CHECK(r_star(100.0, 1, 2.0, 1, RStarVariant::stationary) ==
          doctest::Approx(std::sqrt(1.0 / (100.0 * kPi * 25.0))).epsilon(1e-12));
    CHECK_THROWS_AS(r_star(100.0, 1, 2.0, 0), std::domain_error);

    SUBCASE("stationary variant is a maximum of f in r^2 (finite differences)") {
        SplitMix64 rng(99);
        for (int i = 0; i < 100; ++i) {
            const double N = 100.0 + rng.next_double() * 1e5;
            const int k = 1 + static_cast<int>(rng.next_u64() % 6);
            const double a = 0.2 + rng.next_double() * 4.0;
            const int L = 1 + static_cast<int>(rng.next_u64() % 10);
            if (k * (L + 1) <= 1) continue;
            const double rs = r_star(N, k, a, L, RStarVariant::stationary);
            const double h = rs * 1e-6;
            const double up = f_log(N, k, a, L, rs + h);
            const double down = f_log(N, k, a, L, rs - h);
            const double mid = f_log(N, k, a, L, rs);
            CHECK(mid >= up);
            CHECK(mid >= down);
        }
    }
}

TEST_CASE("f_log") {
    SUBCASE("identity f = S_real * P_k_filling on random draws") {
        SplitMix64 rng(123);
        for (int i = 0; i < 100; ++i) {
            const FillingParams p = random_params(rng);
            const double lhs = f_log(p.N, p.k, p.a, p.L, p.r);
            const double rhs =
                2.0 * std::log(1.0 / (2.0 * (1.0 + 2.0 * p.a) * p.r)) + p_k_filling_log(p);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
    SUBCASE("stationarity at r_star(stationary) via central differences") {
        const double N = 1e4, a = 3.6;
        const int k = 2, L = 11;
        const double rs = r_star(N, k, a, L, RStarVariant::stationary);
        // derivative wrt ln r vanishes at the stationary point
        const double h = 1e-6;
        const double d =
            (f_log(N, k, a, L, rs * std::exp(h)) - f_log(N, k, a, L, rs * std::exp(-h))) /
            (2.0 * h);
        CHECK(std::abs(d) < 1e-4);
    }
    SUBCASE("decreasing in r beyond the stationary point") {
        const double N = 5e3, a = 1.0;
        const int k = 3, L = 5;
        const double rs = r_star(N, k, a, L, RStarVariant::stationary);
        double prev = f_log(N, k, a, L, rs);
        for (double r = rs * 1.1; r < rs * 4.0; r += rs * 0.1) {
            const double cur = f_log(N, k, a, L, r);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("connectivity_upper_bound") {
    SUBCASE("huge k makes the bound vacuous via S = 0 or p ~ 0") {
        const ConnectivityBound b = connectivity_upper_bound(100.0, 80, 3.6, 11);
        CHECK(b.pow_form == doctest::Approx(1.0));
    }
    SUBCASE("(1-P)^S <= exp(-S P) on random draws") {
        SplitMix64 rng(321);
        for (int i = 0; i < 100; ++i) {
            const double N = 1e3 + rng.next_double() * 1e6;
            const int k = 1 + static_cast<int>(rng.next_u64() % 10);
            const double a = 0.5 + rng.next_double() * 4.0;
            const int L = 1 + static_cast<int>(rng.next_u64() % 11);
            const ConnectivityBound b = connectivity_upper_bound(N, k, a, L);
            CHECK(b.pow_form <= b.exp_form + 1e-15);
            CHECK(b.pow_form >= 0.0);
            CHECK(b.exp_form <= 1.0);
        }
    }
    SUBCASE("non-decreasing in k at N = 1e6") {
        double prev = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const ConnectivityBound b = connectivity_upper_bound(1e6, k, 3.6, 11);
            CHECK(b.pow_form >= prev - 1e-15);
            prev = b.pow_form;
        }
    }
}

TEST_CASE("theorem thresholds") {
    CHECK(theorem1_threshold(1e5) == doctest::Approx(1.485167384981159).epsilon(1e-9));
    CHECK(theorem1_threshold(std::exp(1.0 / 0.129)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(theorem1_threshold(10.0, 0.0) == doctest::Approx(0.0));

    CHECK(theorem2_threshold(1e6) == doctest::Approx(1.782039184464259).epsilon(1e-9));
    for (double N : {2.0, 10.0, 1e3, 1e6, 1e9}) {
        CHECK(theorem2_threshold(N) < theorem1_threshold(N));
    }
    // ratio increases toward 1
    double prev = 0.0;
    for (double N : {1e6, 1e9, 1e12}) {
        const double ratio = theorem2_threshold(N) / theorem1_threshold(N);
        CHECK(ratio > prev);
        CHECK(ratio < 1.0);
        prev = ratio;
    }
    CHECK(prev > 0.999);

    CHECK(theorem2_recommended_k(1e6) == 1);
    CHECK(theorem2_recommended_k(10.0) == 0);  // raw threshold may be negative
}

TEST_CASE("probabilities stay in [0, 1] in extreme regimes") {
    // k up to 1e4 and N up to 1e12 must not overflow the log-space path
    const FillingParams p{1e12, 1e-5, 3.6, 11, 10000};
    const double lp = p_k_filling_log(p);
    CHECK(std::isfinite(lp));
    const double prob = p_k_filling(p);
    CHECK(prob >= 0.0);
    CHECK(prob <= 1.0);
}
