#pragma once

#include <string>
#include <vector>

#include "knnlab/analytics.hpp"

namespace knnlab {

enum class LPolicy {
    lmax_only,   // L = l_max(a) per column; the optimum always sits there
    full_sweep,  // every L in [l_min_upper(a), l_max(a)]
};

struct SearchConfig {
    double a_min = 0.1;
    double a_max = 10.0;
    double a_step = 1e-3;
    LPolicy policy = LPolicy::lmax_only;
    bool refine = true;  // per-plateau golden-section + exact boundary points
};

struct PlateauInterval {
    int L = 0;           // l_max value on the interval
    double a_lo = 0.0;
    double a_hi = 0.0;   // +inf for the terminal L = 9 interval
};

struct SearchResult {
    double best_a = 0.0;
    int best_L = 0;
    double best_c = 0.0;
    std::vector<BoundEvaluation> grid;         // ordered by a, then L
    std::vector<double> plateau_boundaries;    // a-values where l_max steps down
};

// Grid search for the largest feasible c = -1/ln_g(a, L). With refinement,
// exploits that within an l_max plateau c(., L) is unimodal in a (derivative
// 2L/a - 4(L+1)/(1+2a) changes sign once) and that plateau right endpoints
// are feasibility boundaries worth evaluating exactly.
SearchResult search(const SearchConfig& config);

// Intervals of constant l_max covering [a_min, a_max]. Interval endpoints
// solve arcsin(a/(2+3a)) = pi/(L+1), bisected to 1e-12.
std::vector<PlateauInterval> plateau_table(double a_min, double a_max);

// Grid rows as CSV: a,L,l_max,l_min_upper,ln_g,c,feasible.
std::string grid_csv(const SearchResult& result);

}  // namespace knnlab
