#include "knnlab/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "knnlab/errors.hpp"
#include "knnlab/trap_geometry.hpp"

namespace knnlab {

namespace {
constexpr double kPi = std::numbers::pi;

void check_filling(const FillingParams& p) {
    if (p.N <= 0.0 || p.r <= 0.0 || p.a <= 0.0 || p.L < 0 || p.k < 0)
        throw std::domain_error("filling parameters must be positive");
}

// log Poisson pmf at count k, mean mu.
double log_pois(int k, double mu) {
    return k * std::log(mu) - mu - std::lgamma(static_cast<double>(k) + 1.0);
}
}  // namespace

double p_k_filling_log(const FillingParams& p) {
    check_filling(p);
    const double inner = p.N * kPi * p.r * p.r;
    const double sub = inner * p.a * p.a / 4.0;
    const double outer = p.N * kPi * (1.0 + 2.0 * p.a) * (1.0 + 2.0 * p.a) * p.r * p.r;
    const double lfact = std::lgamma(static_cast<double>(p.k) + 1.0);
    return p.k * std::log(inner) - lfact + p.L * (p.k * std::log(sub) - lfact) - outer;
}

double p_k_filling_log_product_form(const FillingParams& p) {
    check_filling(p);
    const double inner_area = kPi * p.r * p.r;
    const double sub_area = inner_area * p.a * p.a / 4.0;
    const double outer_area = kPi * (1.0 + 2.0 * p.a) * (1.0 + 2.0 * p.a) * p.r * p.r;
    const double gap_area = outer_area - inner_area - p.L * sub_area;
    return log_pois(p.k, p.N * inner_area) + p.L * log_pois(p.k, p.N * sub_area) -
           p.N * gap_area;
}

double p_k_filling(const FillingParams& p) { return std::exp(p_k_filling_log(p)); }

bool trap_exceeds_square(const FillingParams& p) {
    return kPi * (1.0 + 2.0 * p.a) * (1.0 + 2.0 * p.a) * p.r * p.r > 1.0;
}

double ln_g(double a, int L) {
    if (a <= 0.0) throw std::domain_error("a must be positive");
    if (L < 0) throw std::domain_error("L must be nonnegative");
    const double Ld = static_cast<double>(L);
    return (Ld + 1.0) * std::log(Ld + 1.0) + 2.0 * Ld * std::log(a) - Ld * std::log(4.0) -
           2.0 * (Ld + 1.0) * std::log(1.0 + 2.0 * a);
}

BoundEvaluation c_bound(double a, int L) {
    if (L < 1) throw std::domain_error("L must be >= 1");
    BoundEvaluation ev;
    ev.a = a;
    ev.L = L;
    ev.lmax = l_max(a);
    ev.lmin_upper = l_min_upper(a);
    ev.log_g = ln_g(a, L);
    if (ev.log_g < 0.0) ev.c = -1.0 / ev.log_g;
    ev.feasible = ev.c.has_value() && L >= ev.lmin_upper && L <= ev.lmax;
    return ev;
}

double y_exponent(double c, double a, int L) { return c * ln_g(a, L); }

double r_star(double N, int k, double a, int L, RStarVariant variant) {
    if (N <= 0.0 || k < 1 || a <= 0.0 || L < 1)
        throw std::domain_error("r_star needs positive parameters");
    const double num_paper = static_cast<double>(k) * (L + 1);
    const double num = variant == RStarVariant::paper ? num_paper : num_paper - 1.0;
    if (num <= 0.0) throw std::domain_error("stationary r* needs k(L+1) > 1");
    return std::sqrt(num / (N * kPi * (1.0 + 2.0 * a) * (1.0 + 2.0 * a)));
}

double f_log(double N, int k, double a, int L, double r) {
    FillingParams p{N, r, a, L, k};
    return 2.0 * std::log(1.0 / (2.0 * (1.0 + 2.0 * a) * r)) + p_k_filling_log(p);
}

ConnectivityBound connectivity_upper_bound(double N, int k, double a, int L) {
    ConnectivityBound b;
    b.r = r_star(N, k, a, L, RStarVariant::paper);
    FillingParams p{N, b.r, a, L, k};
    b.p_filling = p_k_filling(p);
    const double edge = 2.0 * (1.0 + 2.0 * a) * b.r;
    const long long m = static_cast<long long>(std::floor(1.0 / edge));
    b.S = m < 1 ? 0 : m * m;
    if (b.S == 0) {
        b.vacuous = true;
        b.pow_form = 1.0;
        b.exp_form = 1.0;
        return b;
    }
    b.pow_form = std::exp(static_cast<double>(b.S) * std::log1p(-b.p_filling));
    b.exp_form = std::exp(-static_cast<double>(b.S) * b.p_filling);
    return b;
}

double theorem1_threshold(double N, double c) {
    if (N <= 1.0) throw std::domain_error("N must exceed 1");
    return c * std::log(N);
}

double theorem2_threshold(double N, double c) {
    if (N < 1.0) throw std::domain_error("N must be >= 1");
    const double arg = N + kPi / 4.0 - std::sqrt(kPi * N / 2.0 + kPi * kPi / 16.0);
    if (arg <= 0.0) throw std::domain_error("threshold argument not positive");
    return c * std::log(arg);
}

int theorem2_recommended_k(double N, double c) {
    const double t = theorem2_threshold(N, c);
    return std::max(0, static_cast<int>(std::ceil(t)) - 1);
}

}  // namespace knnlab
