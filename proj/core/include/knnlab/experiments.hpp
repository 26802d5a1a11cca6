#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "knnlab/csv.hpp"
#include "knnlab/neighbor_graph.hpp"
#include "knnlab/trap_geometry.hpp"

namespace knnlab {

inline constexpr const char* kToolVersion = "knnlab 0.1.0";

// --- experiment configuration ------------------------------------------------

struct ConnectivityExperiment {
    std::vector<double> N_values;
    std::vector<int> k_values;      // explicit neighbor counts
    std::vector<double> c_values;   // translated per N as k = max(1, floor(c*ln N))
    Rule rule = Rule::union_rule;
    PointModel model = PointModel::fixed;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    int threads = 0;                // 0: hardware concurrency
    double sample_budget = 4e9;     // refuse when sum(N * trials) exceeds this
};

enum class FillMode { exact, at_least };

std::string to_string(FillMode m);
FillMode fill_mode_from_string(const std::string& s);

struct KFillingExperiment {
    double N = 0.0;
    double r = 0.0;
    double a = 0.0;
    int L = 1;
    int k = 1;
    FillMode mode = FillMode::exact;
    bool grid_placement = false;    // default: single trap centered in the square
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    int threads = 0;
    double sample_budget = 4e9;
};

// --- result rows --------------------------------------------------------------

struct ConnectivityRow {
    double N = 0.0;
    int k = 0;
    Rule rule = Rule::union_rule;
    PointModel model = PointModel::fixed;
    std::uint64_t trials = 0;
    std::uint64_t connected = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;   // Wilson 95%
    double ci_high = 0.0;
    double mean_largest_component = 0.0;
};

struct KFillingRow {
    double N = 0.0;
    double r = 0.0;
    double a = 0.0;
    int L = 0;
    int k = 0;
    FillMode mode = FillMode::exact;
    std::uint64_t trials = 0;       // trap evaluations (trials * placed traps)
    std::uint64_t hits = 0;
    double p_hat = 0.0;
    double p_analytic = 0.0;
    double z_score = 0.0;
    std::uint64_t events_disconnected_union = 0;
    std::uint64_t events_disconnected_mutual = 0;
    double certificate_pass_rate = 0.0;  // over trials with an event; nan if none
    bool underpowered = false;           // p_analytic < 10/trials
};

// --- detectors ----------------------------------------------------------------

// Filling event for one trap: exact mode requires exactly k nodes in the
// inner disk and in every sub-disk and none elsewhere in the outer disk;
// at_least mode relaxes the designated regions to >= k.
bool detect_k_filling(const std::vector<Point>& points, const Trap& trap, int k, FillMode mode);
bool detect_k_filling(const PointSet& points, const Trap& trap, int k, FillMode mode);

// True iff every node strictly outside the outer disk sees at least k nodes
// (other than the inner-disk nodes) strictly closer than its nearest
// inner-disk node, so no outside node ever selects an inner one. Vacuously
// true with no outside nodes or no inner nodes.
bool outside_selection_certificate(const std::vector<Point>& points, const Trap& trap, int k);
bool outside_selection_certificate(const PointSet& points, const Trap& trap, int k);

// --- runs ---------------------------------------------------------------------

// Wilson 95% score interval.
struct Interval {
    double low = 0.0;
    double high = 0.0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

// One row per (N, k) pair; trial t of row i uses the substream
// (master_seed, i * trials + t). Aggregates are independent of thread count.
std::vector<ConnectivityRow> run_connectivity(const ConnectivityExperiment& cfg);

// Poisson-model frequency check of the filling probability, plus the
// empirical disconnection probe: for every trial with an event the graph
// connectivity is recorded under both rules together with the
// outside-selection certificate.
KFillingRow run_kfilling(const KFillingExperiment& cfg);

CsvTable connectivity_table(const std::vector<ConnectivityRow>& rows, std::uint64_t master_seed);
CsvTable kfilling_table(const KFillingRow& row, std::uint64_t master_seed);

// --- persistence ----------------------------------------------------------------

struct Manifest {
    std::string command;
    std::string version = kToolVersion;
    std::uint64_t master_seed = 0;
    nlohmann::json params = nlohmann::json::object();
    std::string started_at;  // ISO-8601 UTC
    std::uint64_t duration_ms = 0;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
};

std::string utc_timestamp_now();

// Writes each named CSV plus manifest.json under out_dir (created if absent);
// records and returns the written paths. CSV bytes depend only on
// (config, master_seed, tool version).
std::vector<std::string> persist(const std::vector<std::pair<std::string, CsvTable>>& tables,
                                 Manifest& manifest, const std::string& out_dir);

}  // namespace knnlab
