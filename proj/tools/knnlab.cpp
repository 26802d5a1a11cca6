// knnlab: analytic evaluation and seeded Monte Carlo exploration of
// k-nearest-neighbor connectivity of dense random networks in the unit
// square. Batch tool: every data-producing run writes CSVs plus a JSON
// manifest into its own output directory.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "knnlab/analytics.hpp"
#include "knnlab/bound_optimizer.hpp"
#include "knnlab/csv.hpp"
#include "knnlab/errors.hpp"
#include "knnlab/experiments.hpp"
#include "knnlab/point_process.hpp"
#include "knnlab/svg_plot.hpp"
#include "knnlab/trap_geometry.hpp"

namespace {

using namespace knnlab;

// 6 significant digits for terminal output; files carry full precision.
std::string fmt6(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string default_out_dir() {
    const char* env = std::getenv("KNNLAB_OUT");
    return env && *env ? env : "out";
}

std::string compact_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

std::string run_dir(const std::string& out_dir, const std::string& command, std::uint64_t seed) {
    return (std::filesystem::path(out_dir) /
            (command + "-" + compact_utc_now() + "-" + std::to_string(seed)))
        .string();
}

// JSON config files whose keys mirror the long flag names; values given on
// the command line win. Unknown keys are rejected by the parser.
class ConfigJson : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        nlohmann::json j;
        for (const CLI::Option* opt : app->get_options()) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            const std::string name = opt->get_lnames()[0];
            if (opt->count() > 0) {
                j[name] = opt->results().size() == 1 ? nlohmann::json(opt->results()[0])
                                                     : nlohmann::json(opt->results());
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        input >> j;
        return walk(j, "", {});
    }

private:
    static std::vector<CLI::ConfigItem> walk(const nlohmann::json& j, const std::string& name,
                                             std::vector<std::string> parents) {
        std::vector<CLI::ConfigItem> out;
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (auto it = j.begin(); it != j.end(); ++it) {
                auto sub = walk(it.value(), it.key(), parents);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            return out;
        }
        CLI::ConfigItem item;
        item.name = name;
        item.parents = std::move(parents);
        if (j.is_array()) {
            for (const auto& v : j)
                item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        } else if (j.is_string()) {
            item.inputs.push_back(j.get<std::string>());
        } else {
            item.inputs.push_back(j.dump());
        }
        out.push_back(item);
        return out;
    }
};

// --- bound ---------------------------------------------------------------

struct BoundEvalArgs {
    double a = 3.6;
    int L = 11;
};

int cmd_bound_eval(const BoundEvalArgs& args) {
    const BoundEvaluation ev = c_bound(args.a, args.L);
    std::cout << "a            = " << fmt6(ev.a) << "\n"
              << "L            = " << ev.L << "\n"
              << "l_max(a)     = " << ev.lmax << "\n"
              << "l_min_upper  = " << ev.lmin_upper << "\n"
              << "ln_g(a,L)    = " << fmt6(ev.log_g) << "\n";
    if (!ev.feasible) {
        std::cerr << "infeasible (a, L): requires l_min_upper <= L <= l_max and ln_g < 0\n";
        return 2;
    }
    std::cout << "c            = " << fmt6(*ev.c) << "\n";
    return 0;
}

struct BoundSearchArgs {
    SearchConfig cfg;
    std::string out_dir = default_out_dir();
};

int cmd_bound_search(const BoundSearchArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    Manifest manifest;
    manifest.command = "bound-search";
    manifest.started_at = utc_timestamp_now();
    manifest.params = {{"a_min", args.cfg.a_min},
                       {"a_max", args.cfg.a_max},
                       {"a_step", args.cfg.a_step},
                       {"policy", args.cfg.policy == LPolicy::lmax_only ? "lmax_only" : "full_sweep"},
                       {"refine", args.cfg.refine}};

    const SearchResult res = search(args.cfg);
    const BoundEvaluation ref = c_bound(3.6, 11);

    std::cout << "reference    c(a=3.6, L=11) = " << fmt6(*ref.c) << "\n";
    std::cout << "search best  c = " << fmt6(res.best_c) << " at a = " << fmt6(res.best_a)
              << ", L = " << res.best_L << "\n";
    std::cout << "plateau boundaries:";
    for (double b : res.plateau_boundaries) std::cout << ' ' << fmt6(b);
    std::cout << "\n";

    const std::string dir = run_dir(args.out_dir, "bound-search", 0);
    manifest.notes.push_back("best_c=" + format_double(res.best_c) +
                             " best_a=" + format_double(res.best_a) +
                             " best_L=" + std::to_string(res.best_L));
    manifest.duration_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    std::filesystem::create_directories(dir);
    const std::string grid_path = (std::filesystem::path(dir) / "grid.csv").string();
    write_text_file(grid_path, grid_csv(res));
    manifest.outputs.push_back(grid_path);
    const auto paths = persist({}, manifest, dir);
    std::cout << "wrote " << grid_path << "\n";
    return 0;
}

// --- threshold -----------------------------------------------------------

int cmd_threshold(double N, double c) {
    if (N < 2.0) {
        std::cerr << "N must be >= 2\n";
        return 1;
    }
    const double t1 = theorem1_threshold(N, c);
    const double t2 = theorem2_threshold(N, c);
    std::cout << "k threshold, Poisson model   (c*ln N)           = " << fmt6(t1) << "\n"
              << "k threshold, fixed-N model   (c*ln(adjusted N)) = " << fmt6(t2) << "\n"
              << "ratio fixed/Poisson                             = " << fmt6(t2 / t1) << "\n"
              << "largest integer k below the fixed-N threshold   = "
              << theorem2_recommended_k(N, c) << "\n";
    return 0;
}

// --- simulate ------------------------------------------------------------

int cmd_simulate_connectivity(const ConnectivityExperiment& cfg, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    Manifest manifest;
    manifest.command = "simulate-connectivity";
    manifest.master_seed = cfg.master_seed;
    manifest.started_at = utc_timestamp_now();
    manifest.params = {{"N", cfg.N_values},
                       {"k", cfg.k_values},
                       {"c", cfg.c_values},
                       {"rule", to_string(cfg.rule)},
                       {"model", cfg.model == PointModel::fixed ? "fixed" : "poisson"},
                       {"trials", cfg.trials}};
    if (!cfg.c_values.empty())
        manifest.notes.push_back("k derived from c as max(1, floor(c*ln N))");

    const auto rows = run_connectivity(cfg);
    for (const ConnectivityRow& r : rows) {
        std::cout << "N=" << fmt6(r.N) << " k=" << r.k << " rule=" << to_string(r.rule)
                  << " connected " << r.connected << "/" << r.trials
                  << " p_hat=" << fmt6(r.p_hat) << " ci=[" << fmt6(r.ci_low) << ", "
                  << fmt6(r.ci_high) << "]"
                  << " mean_largest=" << fmt6(r.mean_largest_component) << "\n";
    }
    manifest.duration_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    const std::string dir = run_dir(out_dir, "simulate-connectivity", cfg.master_seed);
    const auto paths =
        persist({{"connectivity.csv", connectivity_table(rows, cfg.master_seed)}}, manifest, dir);
    std::cout << "wrote " << paths.front() << "\n";
    return 0;
}

int cmd_simulate_kfill(const KFillingExperiment& cfg, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    Manifest manifest;
    manifest.command = "simulate-kfill";
    manifest.master_seed = cfg.master_seed;
    manifest.started_at = utc_timestamp_now();
    manifest.params = {{"N", cfg.N},        {"r", cfg.r},
                       {"a", cfg.a},        {"L", cfg.L},
                       {"k", cfg.k},        {"mode", to_string(cfg.mode)},
                       {"grid", cfg.grid_placement}, {"trials", cfg.trials}};

    const KFillingRow row = run_kfilling(cfg);
    std::cout << "trap evaluations = " << row.trials << ", hits = " << row.hits << "\n"
              << "p_hat      = " << fmt6(row.p_hat) << "\n"
              << "p_analytic = " << fmt6(row.p_analytic) << "\n"
              << "z_score    = " << fmt6(row.z_score) << "\n"
              << "events disconnected (union/mutual) = " << row.events_disconnected_union << "/"
              << row.events_disconnected_mutual << "\n"
              << "outside-selection certificate pass rate = " << fmt6(row.certificate_pass_rate)
              << "\n";
    if (row.underpowered) {
        const std::string w = "underpowered: expected hits " +
                              fmt6(row.p_analytic * static_cast<double>(row.trials)) +
                              " < 10; frequency comparison is weak";
        std::cerr << "warning: " << w << "\n";
        manifest.notes.push_back(w);
    }
    manifest.duration_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    const std::string dir = run_dir(out_dir, "simulate-kfill", cfg.master_seed);
    const auto paths =
        persist({{"kfilling.csv", kfilling_table(row, cfg.master_seed)}}, manifest, dir);
    std::cout << "wrote " << paths.front() << "\n";
    return 0;
}

// --- verify --------------------------------------------------------------

int cmd_verify_trap(double a, int L, int angles, int exterior_levels) {
    CertificateOptions opts;
    opts.num_angles = angles;
    opts.exterior_levels = exterior_levels;
    opts.exterior_max_offset = exterior_levels > 0 ? 2.0 * a : 0.0;
    const bool pass = containment_certificate(a, L, opts);
    std::cout << "containment certificate (a=" << fmt6(a) << ", L=" << L << "): "
              << (pass ? "PASS" : "FAIL") << "\n";
    return 0;
}

int cmd_verify_lmin(double a, int angles) {
    CertificateOptions opts;
    opts.num_angles = angles;
    std::cout << "numeric_l_min(" << fmt6(a) << ") = " << numeric_l_min(a, opts)
              << "  (analytic upper bound " << l_min_upper(a) << ", l_max " << l_max(a) << ")\n";
    return 0;
}

// --- poisson-window ------------------------------------------------------

int cmd_poisson_window(double N, const std::string& out_dir) {
    if (N <= 0.0) {
        std::cerr << "N must be positive\n";
        return 1;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const double p = poisson_window_probability(N);
    const double limit = poisson_window_normal_limit();
    std::cout << "P(count within N +- sqrt(pi*N/2)) = " << fmt6(p) << "\n"
              << "normal-limit reference             = " << fmt6(limit) << "\n";

    Manifest manifest;
    manifest.command = "poisson-window";
    manifest.started_at = utc_timestamp_now();
    manifest.params = {{"N", N}};
    manifest.notes.push_back(
        "window is +-sqrt(pi/2) ~ 1.2533 standard deviations, so the exact probability "
        "approaches 2*Phi(sqrt(pi/2))-1 ~ 0.7899 as N grows, not 1; the asymptotic claim of 1 "
        "quoted for this window is not reproduced by exact summation");
    manifest.notes.push_back("exact=" + format_double(p) + " normal_limit=" + format_double(limit));
    manifest.duration_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    const std::string dir = run_dir(out_dir, "poisson-window", 0);
    persist({}, manifest, dir);
    std::cout << "wrote " << (std::filesystem::path(dir) / "manifest.json").string() << "\n";
    return 0;
}

// --- plot ------------------------------------------------------------------

int cmd_plot(const std::string& input, const std::string& x, const std::string& y,
             const std::string& out) {
    const CsvTable table = read_csv(input);
    const std::string svg = render_svg_chart(table, x, y);
    write_text_file(out, svg);
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic bounds and seeded Monte Carlo experiments for k-nearest-neighbor "
                 "connectivity of random networks in the unit square"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<ConfigJson>());
    app.set_config("--config", "", "JSON config file; keys mirror long flag names, flags win");
    app.allow_config_extras(false);
    app.get_formatter()->column_width(40);

    int exit_code = 0;
    std::function<int()> action;

    // bound
    auto* bound = app.add_subcommand(
        "bound", "Evaluate or maximize the disconnection constant c = -1/ln g(a, L): networks "
                 "with fewer than c*ln N neighbors per node are asymptotically disconnected");
    bound->require_subcommand(1);
    auto eval_args = std::make_shared<BoundEvalArgs>();
    auto* beval = bound->add_subcommand("eval", "Evaluate c and the trap limits at one (a, L)");
    beval->add_option("--a", eval_args->a, "annulus width parameter a > 0")->required();
    beval->add_option("--L", eval_args->L, "number of sub-disks")->required();
    beval->callback([&, eval_args] { action = [eval_args] { return cmd_bound_eval(*eval_args); }; });

    auto search_args = std::make_shared<BoundSearchArgs>();
    auto* bsearch = bound->add_subcommand(
        "search", "Grid search over (a, L) for the largest feasible c, with per-plateau "
                  "refinement; writes the full grid as CSV");
    bsearch->add_option("--a-min", search_args->cfg.a_min, "grid lower bound")
        ->capture_default_str();
    bsearch->add_option("--a-max", search_args->cfg.a_max, "grid upper bound")
        ->capture_default_str();
    bsearch->add_option("--a-step", search_args->cfg.a_step, "grid step")->capture_default_str();
    bsearch->add_flag_callback(
        "--full-sweep", [search_args] { search_args->cfg.policy = LPolicy::full_sweep; },
        "sweep every L in [l_min_upper(a), l_max(a)] instead of L = l_max(a)");
    bsearch->add_flag_callback(
        "--no-refine", [search_args] { search_args->cfg.refine = false; },
        "skip golden-section plateau refinement and exact boundary evaluation");
    bsearch->add_option("--out-dir", search_args->out_dir, "output directory root")
        ->capture_default_str();
    bsearch->callback(
        [&, search_args] { action = [search_args] { return cmd_bound_search(*search_args); }; });

    // threshold
    auto thr = std::make_shared<std::pair<double, double>>(0.0, kDefaultC);
    auto* threshold = app.add_subcommand(
        "threshold", "Neighbor-count thresholds below which the network is asymptotically "
                     "disconnected: c*ln N for the Poisson model and the adjusted fixed-N variant");
    threshold->add_option("--N", thr->first, "node count / intensity")->required();
    threshold->add_option("--c", thr->second, "bound constant")->capture_default_str();
    threshold->callback([&, thr] { action = [thr] { return cmd_threshold(thr->first, thr->second); }; });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo experiments");
    simulate->require_subcommand(1);

    auto conn_cfg = std::make_shared<ConnectivityExperiment>();
    auto conn_out = std::make_shared<std::string>(default_out_dir());
    auto* sconn = simulate->add_subcommand(
        "connectivity", "Estimate P(connected) of the k-neighbor graph over seeded trials");
    sconn->add_option("--N", conn_cfg->N_values, "node counts / intensities")->required();
    sconn->add_option("--k", conn_cfg->k_values, "neighbor counts");
    sconn->add_option("--c", conn_cfg->c_values, "constants; k = max(1, floor(c*ln N))");
    sconn->add_option("--rule", [conn_cfg](const std::vector<std::string>& v) {
        conn_cfg->rule = rule_from_string(v[0]);
        return true;
    }, "selection rule: union|mutual")->default_str("union");
    sconn->add_option("--model", [conn_cfg](const std::vector<std::string>& v) {
        if (v[0] == "fixed") conn_cfg->model = PointModel::fixed;
        else if (v[0] == "poisson") conn_cfg->model = PointModel::poisson;
        else throw CLI::ValidationError("--model", "must be fixed or poisson");
        return true;
    }, "point model: fixed|poisson")->default_str("fixed");
    sconn->add_option("--trials", conn_cfg->trials, "trials per (N, k)")->capture_default_str();
    sconn->add_option("--seed", conn_cfg->master_seed, "master seed")->capture_default_str();
    sconn->add_option("--threads", conn_cfg->threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    sconn->add_option("--budget", conn_cfg->sample_budget, "max total point-samples")
        ->capture_default_str();
    sconn->add_option("--out-dir", *conn_out, "output directory root")->capture_default_str();
    sconn->callback([&, conn_cfg, conn_out] {
        action = [conn_cfg, conn_out] { return cmd_simulate_connectivity(*conn_cfg, *conn_out); };
    });

    auto kf_cfg = std::make_shared<KFillingExperiment>();
    auto kf_out = std::make_shared<std::string>(default_out_dir());
    auto* skfill = simulate->add_subcommand(
        "kfill", "Compare the empirical filling-event frequency of a trap against its exact "
                 "probability, and probe whether events disconnect the graph");
    skfill->add_option("--N", kf_cfg->N, "Poisson intensity")->required();
    skfill->add_option("--r", kf_cfg->r, "inner disk radius")->required();
    skfill->add_option("--a", kf_cfg->a, "annulus width parameter")->required();
    skfill->add_option("--L", kf_cfg->L, "number of sub-disks")->required();
    skfill->add_option("--k", kf_cfg->k, "nodes per region")->required();
    skfill->add_option("--mode", [kf_cfg](const std::vector<std::string>& v) {
        kf_cfg->mode = fill_mode_from_string(v[0]);
        return true;
    }, "event mode: exact|atleast")->default_str("exact");
    skfill->add_flag("--grid", kf_cfg->grid_placement, "place a full grid of traps, not one");
    skfill->add_option("--trials", kf_cfg->trials, "Poisson samples")->capture_default_str();
    skfill->add_option("--seed", kf_cfg->master_seed, "master seed")->capture_default_str();
    skfill->add_option("--threads", kf_cfg->threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    skfill->add_option("--budget", kf_cfg->sample_budget, "max total point-samples")
        ->capture_default_str();
    skfill->add_option("--out-dir", *kf_out, "output directory root")->capture_default_str();
    skfill->callback([&, kf_cfg, kf_out] {
        action = [kf_cfg, kf_out] { return cmd_simulate_kfill(*kf_cfg, *kf_out); };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Numeric verification of the trap geometry");
    verify->require_subcommand(1);
    struct VerifyTrapArgs {
        double a = 0.0;
        int L = 0;
        int angles = 100000;
        int exterior = 0;
    };
    auto vt = std::make_shared<VerifyTrapArgs>();
    auto* vtrap = verify->add_subcommand(
        "trap", "Check that every tangent probe disk on the outer boundary fully contains a "
                "sub-disk, so outside nodes never select inner ones");
    vtrap->add_option("--a", vt->a, "annulus width parameter")->required();
    vtrap->add_option("--L", vt->L, "number of sub-disks")->required();
    vtrap->add_option("--angles", vt->angles, "probe angles")->capture_default_str();
    vtrap->add_option("--exterior-levels", vt->exterior, "extra probe radii outside the boundary")
        ->capture_default_str();
    vtrap->callback([&, vt] {
        action = [vt] { return cmd_verify_trap(vt->a, vt->L, vt->angles, vt->exterior); };
    });

    auto vl = std::make_shared<std::pair<double, int>>(0.0, 100000);
    auto* vlmin = verify->add_subcommand(
        "lmin", "Smallest sub-disk count passing the containment certificate");
    vlmin->add_option("--a", vl->first, "annulus width parameter")->required();
    vlmin->add_option("--angles", vl->second, "probe angles")->capture_default_str();
    vlmin->callback(
        [&, vl] { action = [vl] { return cmd_verify_lmin(vl->first, vl->second); }; });

    // poisson-window
    auto pw = std::make_shared<double>(0.0);
    auto pw_out = std::make_shared<std::string>(default_out_dir());
    auto* pwin = app.add_subcommand(
        "poisson-window",
        "Exact probability that a Poisson(N) count lands within N +- sqrt(pi*N/2)");
    pwin->add_option("--N", *pw, "Poisson intensity")->required();
    pwin->add_option("--out-dir", *pw_out, "output directory root")->capture_default_str();
    pwin->callback(
        [&, pw, pw_out] { action = [pw, pw_out] { return cmd_poisson_window(*pw, *pw_out); }; });

    // plot
    struct PlotArgs {
        std::string input, x, y, out;
    };
    auto pa = std::make_shared<PlotArgs>();
    auto* plot = app.add_subcommand("plot", "Render a result CSV as a static SVG chart");
    plot->add_option("--input", pa->input, "input CSV")->required();
    plot->add_option("--x", pa->x, "x column")->required();
    plot->add_option("--y", pa->y, "y column")->required();
    plot->add_option("--out", pa->out, "output SVG path")->required();
    plot->callback(
        [&, pa] { action = [pa] { return cmd_plot(pa->input, pa->x, pa->y, pa->out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        exit_code = action ? action() : 1;
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
