#include "knnlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "knnlab/analytics.hpp"
#include "knnlab/errors.hpp"
#include "knnlab/rng.hpp"

namespace knnlab {

namespace {

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..count-1) on a worker pool. Work is claimed through an atomic
// counter; callers must write results into per-index slots so that the
// outcome is independent of scheduling.
void parallel_for(std::uint64_t count, int threads, const std::function<void(std::uint64_t)>& fn) {
    const int workers = std::min<std::uint64_t>(effective_threads(threads), count);
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

std::string to_string(FillMode m) { return m == FillMode::exact ? "exact" : "atleast"; }

FillMode fill_mode_from_string(const std::string& s) {
    if (s == "exact") return FillMode::exact;
    if (s == "atleast" || s == "at_least") return FillMode::at_least;
    throw std::invalid_argument("unknown filling mode: " + s);
}

bool detect_k_filling(const std::vector<Point>& points, const Trap& trap, int k, FillMode mode) {
    const std::size_t outer = region_count(points, trap.outer_disk());
    const std::size_t inner = region_count(points, trap.inner_disk());
    const std::size_t want = static_cast<std::size_t>(k);
    if (mode == FillMode::exact ? inner != want : inner < want) return false;
    std::size_t designated = inner;
    for (int i = 0; i < trap.L; ++i) {
        const std::size_t c = region_count(points, trap.subdisk(i));
        if (mode == FillMode::exact ? c != want : c < want) return false;
        designated += c;
    }
    return outer == designated;  // nothing elsewhere in the outer disk
}

bool detect_k_filling(const PointSet& points, const Trap& trap, int k, FillMode mode) {
    return detect_k_filling(points.points, trap, k, mode);
}

bool outside_selection_certificate(const std::vector<Point>& points, const Trap& trap, int k) {
    const Disk inner = trap.inner_disk();
    const Disk outer = trap.outer_disk();
    std::vector<std::size_t> inner_idx;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (inner.contains(points[i])) inner_idx.push_back(i);
    }
    if (inner_idx.empty()) return true;

    const double outer_r2 = outer.radius * outer.radius;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (dist2(points[i], outer.center) <= outer_r2) continue;  // not strictly outside
        double nearest_inner = std::numeric_limits<double>::infinity();
        for (std::size_t j : inner_idx) nearest_inner = std::min(nearest_inner, dist2(points[i], points[j]));
        int closer = 0;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i || inner.contains(points[j])) continue;
            if (dist2(points[i], points[j]) < nearest_inner && ++closer >= k) break;
        }
        if (closer < k) return false;
    }
    return true;
}

bool outside_selection_certificate(const PointSet& points, const Trap& trap, int k) {
    return outside_selection_certificate(points.points, trap, k);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;  // 95%
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

void check_budget(double samples, double budget) {
    if (samples > budget) {
        throw std::invalid_argument(
            "configuration needs ~" + std::to_string(static_cast<long long>(samples)) +
            " point-samples, above the budget of " +
            std::to_string(static_cast<long long>(budget)) +
            "; reduce N or trials, or raise the budget");
    }
}

struct ConnTrial {
    bool connected = false;
    std::size_t largest = 0;
};

}  // namespace

std::vector<ConnectivityRow> run_connectivity(const ConnectivityExperiment& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (double N : cfg.N_values) {
        if (N < 2.0) throw std::invalid_argument("N must be >= 2");
    }

    // Expand (N, k) rows; c-values translate as k = max(1, floor(c * ln N)).
    struct RowSpec {
        double N;
        int k;
    };
    std::vector<RowSpec> specs;
    for (double N : cfg.N_values) {
        for (int k : cfg.k_values) {
            if (k < 1) throw std::invalid_argument("k must be >= 1");
            specs.push_back({N, k});
        }
        for (double c : cfg.c_values) {
            specs.push_back({N, std::max(1, static_cast<int>(std::floor(c * std::log(N))))});
        }
    }
    if (specs.empty()) throw std::invalid_argument("no (N, k) rows configured");

    double samples = 0.0;
    for (const RowSpec& s : specs) samples += s.N * static_cast<double>(cfg.trials);
    check_budget(samples, cfg.sample_budget);

    std::vector<ConnectivityRow> rows;
    rows.reserve(specs.size());
    for (std::size_t row = 0; row < specs.size(); ++row) {
        const RowSpec& spec = specs[row];
        std::vector<ConnTrial> outcomes(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t t) {
            const std::uint64_t seed =
                stream_seed(cfg.master_seed, row * cfg.trials + t);
            const PointSet ps =
                cfg.model == PointModel::fixed
                    ? sample_fixed(static_cast<std::uint64_t>(std::llround(spec.N)), seed)
                    : sample_poisson(spec.N, seed);
            ConnTrial out;
            if (ps.count() < 2) {
                out.connected = true;  // 0 or 1 nodes: trivially connected
                out.largest = ps.count();
            } else {
                const NeighborGraph g = build_graph(ps, spec.k, cfg.rule);
                out.connected = is_connected(g);
                out.largest = components(g).front();
            }
            outcomes[t] = out;
        });

        ConnectivityRow r;
        r.N = spec.N;
        r.k = spec.k;
        r.rule = cfg.rule;
        r.model = cfg.model;
        r.trials = cfg.trials;
        double largest_sum = 0.0;
        for (const ConnTrial& o : outcomes) {
            r.connected += o.connected ? 1 : 0;
            largest_sum += static_cast<double>(o.largest);
        }
        r.p_hat = static_cast<double>(r.connected) / static_cast<double>(r.trials);
        const Interval ci = wilson_interval(r.connected, r.trials);
        r.ci_low = ci.low;
        r.ci_high = ci.high;
        r.mean_largest_component = largest_sum / static_cast<double>(r.trials);
        rows.push_back(r);
    }
    return rows;
}

KFillingRow run_kfilling(const KFillingExperiment& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.N <= 0.0) throw std::invalid_argument("N must be positive");
    check_budget(cfg.N * static_cast<double>(cfg.trials), cfg.sample_budget);

    // The frequency comparison is a Poisson-process statement; the fixed-N
    // model is rejected by construction (region counts are dependent there).
    std::vector<Trap> traps;
    if (cfg.grid_placement) {
        const GridPlacement g = grid_capacity(cfg.a, cfg.r);
        if (g.capacity == 0) throw infeasible_error("trap does not fit in the unit square");
        traps.reserve(g.centers.size());
        for (const Point& c : g.centers) traps.push_back(build_trap(c, cfg.r, cfg.a, cfg.L));
    } else {
        traps.push_back(build_trap({0.5, 0.5}, cfg.r, cfg.a, cfg.L));
    }

    struct Trial {
        std::uint32_t hits = 0;
        bool event = false;
        bool disconnected_union = false;
        bool disconnected_mutual = false;
        bool certificate = false;
    };
    std::vector<Trial> outcomes(cfg.trials);

    parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t t) {
        const PointSet ps = sample_poisson(cfg.N, stream_seed(cfg.master_seed, t));
        Trial out;
        const Trap* event_trap = nullptr;
        for (const Trap& trap : traps) {
            if (detect_k_filling(ps, trap, cfg.k, cfg.mode)) {
                ++out.hits;
                if (!event_trap) event_trap = &trap;
            }
        }
        if (event_trap) {
            out.event = true;
            out.certificate = outside_selection_certificate(ps, *event_trap, cfg.k);
            if (ps.count() >= 2) {
                out.disconnected_union =
                    !is_connected(build_graph(ps, cfg.k, Rule::union_rule));
                out.disconnected_mutual =
                    !is_connected(build_graph(ps, cfg.k, Rule::mutual));
            }
        }
        outcomes[t] = out;
    });

    KFillingRow row;
    row.N = cfg.N;
    row.r = cfg.r;
    row.a = cfg.a;
    row.L = cfg.L;
    row.k = cfg.k;
    row.mode = cfg.mode;
    row.trials = cfg.trials * traps.size();
    std::uint64_t events = 0;
    std::uint64_t cert_pass = 0;
    for (const Trial& o : outcomes) {
        row.hits += o.hits;
        if (o.event) {
            ++events;
            cert_pass += o.certificate ? 1 : 0;
            row.events_disconnected_union += o.disconnected_union ? 1 : 0;
            row.events_disconnected_mutual += o.disconnected_mutual ? 1 : 0;
        }
    }
    row.p_hat = static_cast<double>(row.hits) / static_cast<double>(row.trials);
    row.p_analytic = p_k_filling({cfg.N, cfg.r, cfg.a, cfg.L, cfg.k});
    const double sigma =
        std::sqrt(row.p_analytic * (1.0 - row.p_analytic) / static_cast<double>(row.trials));
    row.z_score = sigma > 0.0 ? (row.p_hat - row.p_analytic) / sigma
                              : (row.p_hat == row.p_analytic ? 0.0
                                                             : std::numeric_limits<double>::infinity());
    row.certificate_pass_rate =
        events > 0 ? static_cast<double>(cert_pass) / static_cast<double>(events)
                   : std::numeric_limits<double>::quiet_NaN();
    row.underpowered = row.p_analytic * static_cast<double>(row.trials) < 10.0;
    return row;
}

CsvTable connectivity_table(const std::vector<ConnectivityRow>& rows, std::uint64_t master_seed) {
    CsvTable t;
    t.header = {"N",      "k",      "rule",    "model",                  "trials",
                "connected", "p_hat", "ci_low", "ci_high", "mean_largest_component",
                "master_seed"};
    for (const ConnectivityRow& r : rows) {
        t.rows.push_back({format_double(r.N), std::to_string(r.k), to_string(r.rule),
                          r.model == PointModel::fixed ? "fixed" : "poisson",
                          format_u64(r.trials), format_u64(r.connected), format_double(r.p_hat),
                          format_double(r.ci_low), format_double(r.ci_high),
                          format_double(r.mean_largest_component), format_u64(master_seed)});
    }
    return t;
}

CsvTable kfilling_table(const KFillingRow& r, std::uint64_t master_seed) {
    CsvTable t;
    t.header = {"N",     "r",     "a",     "L",        "k",
                "mode",  "trials", "hits",  "p_hat",    "p_analytic",
                "z_score", "events_disconnected_union", "events_disconnected_mutual",
                "certificate_pass_rate", "master_seed"};
    t.rows.push_back({format_double(r.N), format_double(r.r), format_double(r.a),
                      std::to_string(r.L), std::to_string(r.k), to_string(r.mode),
                      format_u64(r.trials), format_u64(r.hits), format_double(r.p_hat),
                      format_double(r.p_analytic), format_double(r.z_score),
                      format_u64(r.events_disconnected_union),
                      format_u64(r.events_disconnected_mutual),
                      std::isnan(r.certificate_pass_rate)
                          ? std::string("nan")
                          : format_double(r.certificate_pass_rate),
                      format_u64(master_seed)});
    return t;
}

nlohmann::json Manifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = version;
    j["master_seed"] = master_seed;
    j["params"] = params;
    j["started_at"] = started_at;
    j["duration_ms"] = duration_ms;
    j["outputs"] = outputs;
    j["notes"] = notes;
    return j;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> persist(const std::vector<std::pair<std::string, CsvTable>>& tables,
                                 Manifest& manifest, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output directory " + out_dir + ": " + ec.message());

    std::vector<std::string> paths;
    for (const auto& [name, table] : tables) {
        const std::string path = (fs::path(out_dir) / name).string();
        write_text_file(path, table.to_string());
        paths.push_back(path);
        manifest.outputs.push_back(path);
    }
    const std::string mpath = (fs::path(out_dir) / "manifest.json").string();
    write_text_file(mpath, manifest.to_json().dump(2) + "\n");
    paths.push_back(mpath);
    return paths;
}

}  // namespace knnlab
