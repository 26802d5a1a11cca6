#include "knnlab/bound_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "knnlab/csv.hpp"
#include "knnlab/errors.hpp"
#include "knnlab/trap_geometry.hpp"

namespace knnlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// a with arcsin(a/(2+3a)) = target, or +inf when the target exceeds the
// supremum arcsin(1/3). Monotone bisection to 1e-12.
double solve_angle(double target) {
    if (target >= std::asin(1.0 / 3.0)) return kInf;
    double lo = 1e-15;
    double hi = 1.0;
    while (std::asin(hi / (2.0 + 3.0 * hi)) < target) hi *= 2.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (std::asin(mid / (2.0 + 3.0 * mid)) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Upper endpoint of the l_max = L plateau.
double plateau_upper(int L) { return solve_angle(kPi / static_cast<double>(L)); }

double feasible_c(double a, int L) {
    const BoundEvaluation ev = c_bound(a, L);
    return ev.feasible ? *ev.c : -kInf;
}

// Golden-section maximum of feasible_c(., L) on [lo, hi]; c is unimodal in a
// within a plateau.
double golden_max(double lo, double hi, int L) {
    constexpr double phi = 0.6180339887498949;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = feasible_c(x1, L);
    double f2 = feasible_c(x2, L);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = feasible_c(x2, L);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = feasible_c(x1, L);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<PlateauInterval> plateau_table(double a_min, double a_max) {
    if (!(a_min > 0.0) || !(a_min < a_max))
        throw std::domain_error("need 0 < a_min < a_max");
    std::vector<PlateauInterval> out;
    const int l_hi = l_max(a_min);
    const int l_lo = l_max(a_max);
    for (int L = l_hi; L >= l_lo; --L) {
        PlateauInterval iv;
        iv.L = L;
        iv.a_lo = std::max(a_min, plateau_upper(L + 1));
        iv.a_hi = std::min(a_max, plateau_upper(L));
        out.push_back(iv);
    }
    return out;
}

SearchResult search(const SearchConfig& config) {
    if (!(config.a_min > 0.0) || !(config.a_min < config.a_max) || !(config.a_step > 0.0))
        throw std::domain_error("invalid search configuration");

    SearchResult res;
    res.best_c = -kInf;
    auto consider = [&res](const BoundEvaluation& ev) {
        if (ev.feasible && *ev.c > res.best_c) {
            res.best_c = *ev.c;
            res.best_a = ev.a;
            res.best_L = ev.L;
        }
    };

    const auto steps =
        static_cast<long long>(std::floor((config.a_max - config.a_min) / config.a_step + 0.5));
    for (long long i = 0; i <= steps; ++i) {
        const double a = std::min(config.a_min + config.a_step * static_cast<double>(i),
                                  config.a_max);
        const int lmax = l_max(a);
        const int l_first = config.policy == LPolicy::lmax_only ? lmax : l_min_upper(a);
        for (int L = l_first; L <= lmax; ++L) {
            res.grid.push_back(c_bound(a, L));
            consider(res.grid.back());
        }
    }

    const auto plateaus = plateau_table(config.a_min, config.a_max);
    for (const PlateauInterval& iv : plateaus) {
        if (std::isfinite(iv.a_hi) && iv.a_hi > config.a_min && iv.a_hi < config.a_max)
            res.plateau_boundaries.push_back(iv.a_hi);
    }

    if (config.refine) {
        for (const PlateauInterval& iv : plateaus) {
            const double hi = std::min(iv.a_hi, config.a_max);
            const double lo = std::max(iv.a_lo, config.a_min);
            if (!(lo < hi)) continue;
            // l_max steps are right-closed: the boundary itself still has
            // l_max = L, and c grows toward it on the reported plateau. The
            // bisected endpoint can land a hair past the step, so a nudged
            // point is evaluated too.
            consider(c_bound(hi, iv.L));
            consider(c_bound(hi - 1e-9, iv.L));
            consider(c_bound(golden_max(lo, hi, iv.L), iv.L));
        }
    }

    if (!std::isfinite(res.best_c)) throw infeasible_error("no feasible (a, L) in search range");
    return res;
}

std::string grid_csv(const SearchResult& result) {
    std::ostringstream os;
    os << "a,L,l_max,l_min_upper,ln_g,c,feasible\n";
    for (const BoundEvaluation& ev : result.grid) {
        os << format_double(ev.a) << ',' << ev.L << ',' << ev.lmax << ',' << ev.lmin_upper << ','
           << format_double(ev.log_g) << ',' << (ev.c ? format_double(*ev.c) : std::string("nan"))
           << ',' << (ev.feasible ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace knnlab
