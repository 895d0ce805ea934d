// Command-line front end: eval, search, verify, scan, plot-data.
//
// Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch,
// 3 search infeasible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lbound/anneal.hpp"
#include "lbound/characters.hpp"
#include "lbound/io.hpp"
#include "lbound/louboutin.hpp"
#include "lbound/trigpoly.hpp"
#include "lbound/verify.hpp"

namespace {

using lbound::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInfeasible = 3;

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string output;
    bool trace = false;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw lbound::DomainError("cannot write " + path);
    out << text;
}

void emit_json(json j, lbound::RunManifest manifest, const Stopwatch& clock, const GlobalOptions& g) {
    manifest.output = g.output;
    manifest.wall_time_s = clock.seconds();
    j["manifest"] = lbound::to_json(manifest);
    emit(j.dump(2) + "\n", g.output);
}

int cmd_eval(const std::string& path, std::optional<double> q, double resolution, const GlobalOptions& g) {
    Stopwatch clock;
    const auto v = lbound::coefficient_vector_from_json(lbound::read_json_file(path));
    if (!lbound::is_admissible(v)) {
        std::cerr << "eval: vector is not admissible (need a_i >= 0 and a_0 < 2 a_1)\n";
        return kExitUsage;
    }
    json out;
    out["vector"] = lbound::to_json(v);
    out["admissible"] = true;
    out["constants"] = lbound::to_json(lbound::derive_constants(v));
    const auto mr = lbound::global_min(v, resolution);
    out["global_min"] = lbound::to_json(mr);
    out["nonnegative"] = mr.certified_lower() >= -1e-6;
    if (q) out["bound"] = lbound::to_json(lbound::bound_at(v, *q, mr.certified_lower() >= -1e-6));
    emit_json(std::move(out), {"eval", "", 0, {path}}, clock, g);
    return kExitOk;
}

struct SearchOptions {
    std::string mode;
    std::string config_path;
    std::optional<int> m;
    std::optional<int> d;
    std::optional<int> restarts;
    std::optional<std::uint64_t> M;
};

int cmd_search(const SearchOptions& o, const GlobalOptions& g) {
    Stopwatch clock;
    const auto mode = o.mode == "order" ? lbound::SearchMode::order : lbound::SearchMode::general;
    json cfg = o.config_path.empty() ? json::object() : lbound::read_json_file(o.config_path);
    if (o.m) cfg["m"] = *o.m;
    if (o.d) {
        cfg["d"] = *o.d;
        if (!o.m && !cfg.contains("m")) cfg["m"] = *o.d - 1;
    }
    if (o.restarts) cfg["restarts"] = *o.restarts;
    if (o.M) cfg["M"] = *o.M;
    if (g.seed) cfg["seed"] = *g.seed;
    if (g.threads > 1) cfg["threads"] = g.threads;
    if (g.trace) cfg["trace"] = true;
    const auto config = lbound::anneal_config_from_json(cfg, mode);

    lbound::AnnealResult result;
    try {
        result = mode == lbound::SearchMode::order ? lbound::order_search(config) : lbound::general_search(config);
    } catch (const lbound::InfeasibleError& e) {
        std::cerr << "search: " << e.what() << '\n';
        return kExitInfeasible;
    }
    if (g.trace) {
        for (const auto& e : result.trace) std::cerr << "record " << e.iteration << ' ' << std::setprecision(12) << e.value << '\n';
    }
    json out = lbound::to_json(result);
    if (mode == lbound::SearchMode::order)
        out["feasibility_deficit"] = lbound::feasibility_deficit(result.best_vector, config.d);
    emit_json(std::move(out), {"search " + o.mode, o.config_path, config.seed, {o.config_path}}, clock, g);
    return kExitOk;
}

int cmd_verify(const std::string& dir, const GlobalOptions& g) {
    Stopwatch clock;
    const auto report = lbound::verify_tables(dir);
    for (const auto& c : report.checks) {
        std::cerr << (c.pass ? "ok      " : (c.flagged ? "flagged " : "FAIL    ")) << c.name << "  expected "
                  << c.expected << "  computed " << std::setprecision(12) << c.computed;
        if (!c.note.empty()) std::cerr << "  (" << c.note << ')';
        std::cerr << '\n';
    }
    emit_json(lbound::to_json(report), {"verify", "", 0, {dir}}, clock, g);
    return report.mismatches() == 0 ? kExitOk : kExitMismatch;
}

int cmd_scan(long q_max, const std::string& csv_path, const std::string& vector_path, double q0,
             const GlobalOptions& g) {
    Stopwatch clock;
    const auto result = lbound::scan(q_max, g.threads);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw lbound::DomainError("cannot write " + csv_path);
        lbound::write_scan_csv(csv, result.table);
    }
    json out;
    out["q_max"] = q_max;
    out["characters"] = result.table.size();
    out["min_product"] = lbound::to_json(result.min_product);
    out["max_ratio"] = lbound::to_json(result.max_ratio);
    const double small_q_lambda = 1.0 / result.min_product.product;
    out["small_q_lambda"] = small_q_lambda;
    lbound::RunManifest manifest{"scan", "", 0, {}};
    if (!vector_path.empty()) {
        const auto v = lbound::coefficient_vector_from_json(lbound::read_json_file(vector_path));
        const double large = lbound::all_q_constant(v, q0);
        out["q0"] = q0;
        out["large_q_constant"] = large;
        out["all_q_constant"] = std::max(large, small_q_lambda);
        manifest.inputs.push_back(vector_path);
    }
    emit_json(std::move(out), manifest, clock, g);
    return kExitOk;
}

int cmd_plot(const std::string& path, double from, double to, int samples, std::optional<int> roots,
             const GlobalOptions& g) {
    if (samples < 2) throw CLI::ValidationError("--samples", "must be >= 2");
    if (!(std::isfinite(from) && std::isfinite(to) && from < to))
        throw CLI::ValidationError("--from/--to", "need finite from < to");
    const auto v = lbound::coefficient_vector_from_json(lbound::read_json_file(path));
    std::ostringstream os;
    os.precision(17);
    os << "theta,value\n";
    for (int i = 0; i < samples; ++i) {
        const double t = from + (to - from) * static_cast<double>(i) / static_cast<double>(samples - 1);
        os << t << ',' << lbound::eval_S(v, t) << '\n';
    }
    if (roots) {
        const auto values = lbound::eval_at_roots(v, *roots);
        os << "# roots d=" << *roots << '\n';
        for (int k = 0; k < *roots; ++k)
            os << 2.0 * std::numbers::pi * k / *roots << ',' << values[static_cast<std::size_t>(k)] << '\n';
    }
    emit(os.str(), g.output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit lower bounds on |L(1, chi)|: constants, searches, verification and scans"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--seed", g.seed, "RNG seed for search commands");
    app.add_option("--threads", g.threads, "worker threads for restarts and scans")->check(CLI::PositiveNumber);
    app.add_option("--output,-o", g.output, "write the result to this file instead of stdout");
    app.add_flag("--trace", g.trace, "record and print every new best objective value");

    std::string eval_path;
    std::optional<double> eval_q;
    double eval_res = lbound::kDefaultMinResolution;
    auto* eval = app.add_subcommand("eval", "constants and nonnegativity diagnostics for a vector");
    eval->add_option("vector", eval_path, "coefficient vector JSON")->required();
    eval->add_option("--q", eval_q, "also report the bound at this conductor");
    eval->add_option("--resolution", eval_res, "grid step for the global minimum");
    eval->fallthrough();

    SearchOptions search_opts;
    auto* search = app.add_subcommand("search", "simulated annealing search");
    search->add_option("mode", search_opts.mode, "general | order")->required()->check(CLI::IsMember({"general", "order"}));
    search->add_option("config", search_opts.config_path, "AnnealConfig JSON (optional)");
    search->add_option("--m", search_opts.m, "degree");
    search->add_option("--d", search_opts.d, "character order (order mode)");
    search->add_option("--restarts", search_opts.restarts, "independent restarts");
    search->add_option("--M", search_opts.M, "proposals per temperature and step size");
    search->fallthrough();

    std::string verify_dir = LBOUND_DATA_DIR;
    auto* verify = app.add_subcommand("verify", "recompute the published tables");
    verify->add_option("tables", verify_dir, "directory with the JSON fixtures");
    verify->fallthrough();

    long scan_q = 500;
    std::string scan_csv;
    std::string scan_vector;
    double scan_q0 = 1e6;
    auto* scan = app.add_subcommand("scan", "|L(1, chi)| over primitive non-quadratic characters");
    scan->add_option("q_max", scan_q, "largest conductor (5..10000)")->check(CLI::Range(5L, 10000L));
    scan->add_option("--csv", scan_csv, "write the full table as CSV");
    scan->add_option("--vector", scan_vector, "vector JSON for the all-q constant");
    scan->add_option("--q0", scan_q0, "conductor from which the vector's constant is used");
    scan->fallthrough();

    std::string plot_path;
    double plot_from = 0.0;
    double plot_to = 2.0 * std::numbers::pi;
    int plot_samples = 1000;
    std::optional<int> plot_roots;
    auto* plot = app.add_subcommand("plot-data", "sample S(a, theta) as CSV");
    plot->add_option("vector", plot_path, "coefficient vector JSON")->required();
    plot->add_option("--from", plot_from, "range start (radians)");
    plot->add_option("--to", plot_to, "range end (radians)");
    plot->add_option("--samples", plot_samples, "number of samples (>= 2)");
    plot->add_option("--roots", plot_roots, "also emit values at the d-th roots of unity")->check(CLI::Range(2, 1 << 20));
    plot->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*eval) return cmd_eval(eval_path, eval_q, eval_res, g);
        if (*search) return cmd_search(search_opts, g);
        if (*verify) return cmd_verify(verify_dir, g);
        if (*scan) return cmd_scan(scan_q, scan_csv, scan_vector, scan_q0, g);
        if (*plot) return cmd_plot(plot_path, plot_from, plot_to, plot_samples, plot_roots, g);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const lbound::InfeasibleError& e) {
        std::cerr << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
