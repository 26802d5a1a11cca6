#pragma once

#include <optional>

namespace knnlab {

struct FillingParams {
    double N = 0.0;
    double r = 0.0;
    double a = 0.0;
    int L = 0;
    int k = 0;
};

// Probability that a trap of type d(r,a,L) carries a filling event: exactly k
// nodes in the inner disk and in each sub-disk, none elsewhere in the outer
// disk, under a Poisson process of intensity N. Evaluated in log-space.
double p_k_filling_log(const FillingParams& p);
double p_k_filling(const FillingParams& p);

// Same probability as the explicit product of Poisson masses (inner disk,
// sub-disks, void of the remaining annulus area). Algebraically identical to
// p_k_filling; kept as the second route for the dual check.
double p_k_filling_log_product_form(const FillingParams& p);

// Outer disk area exceeds the unit square: numerically fine, geometrically
// meaningless. Callers may surface this as a warning.
bool trap_exceeds_square(const FillingParams& p);

// ln of g(a,L) = (L+1)^(L+1) a^(2L) / (4^L (1+2a)^(2(L+1))).
double ln_g(double a, int L);

struct BoundEvaluation {
    double a = 0.0;
    int L = 0;
    int lmax = 0;
    int lmin_upper = 0;
    double log_g = 0.0;
    std::optional<double> c;  // -1/ln_g, defined only when ln_g < 0
    bool feasible = false;    // L in [l_min_upper(a), l_max(a)] and ln_g < 0
};

// The neighbor-count constant: k < c * ln N forces asymptotic disconnection
// for this (a, L). c = -1/ln_g(a, L).
BoundEvaluation c_bound(double a, int L);

// y = c * ln_g(a, L); the regime boundary is y = -1.
double y_exponent(double c, double a, int L);

enum class RStarVariant {
    paper,       // sqrt(k(L+1) / (N pi (1+2a)^2)), the substituted value
    stationary,  // sqrt((k(L+1)-1) / (N pi (1+2a)^2)), exact zero of df/d(r^2)
};

double r_star(double N, int k, double a, int L, RStarVariant variant = RStarVariant::paper);

// ln f(a,r) = ln [ (1/(2(1+2a)r))^2 * P_{k-filling}(r) ].
double f_log(double N, int k, double a, int L, double r);

struct ConnectivityBound {
    double pow_form = 1.0;   // (1 - P)^S
    double exp_form = 1.0;   // exp(-S P), asymptotic form
    double p_filling = 0.0;
    long long S = 0;
    double r = 0.0;
    bool vacuous = false;    // S == 0: no trap fits, bound carries no information
};

// Upper bound on P(connected) using the paper-variant r* and the grid count S.
ConnectivityBound connectivity_upper_bound(double N, int k, double a, int L);

inline constexpr double kDefaultC = 0.129;  // published truncation of 0.129048...

// c * ln N.
double theorem1_threshold(double N, double c = kDefaultC);

// c * ln(N + pi/4 - sqrt(pi N / 2 + pi^2/16)); may be negative for small N.
double theorem2_threshold(double N, double c = kDefaultC);

// max(0, ceil(threshold) - 1): the largest neighbor count still below it.
int theorem2_recommended_k(double N, double c = kDefaultC);

}  // namespace knnlab
