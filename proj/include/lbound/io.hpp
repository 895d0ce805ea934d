#pragma once

// JSON and CSV encodings of the library's records.

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lbound/anneal.hpp"
#include "lbound/characters.hpp"
#include "lbound/louboutin.hpp"
#include "lbound/specialfn.hpp"
#include "lbound/trigpoly.hpp"

namespace lbound {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

// ---- CoefficientVector: {"m": int, "a": [..], "label": string?}

inline json to_json(const CoefficientVector& v) {
    json j;
    j["m"] = v.degree();
    j["a"] = std::vector<double>(v.coeffs().begin(), v.coeffs().end());
    if (!v.label().empty()) j["label"] = v.label();
    return j;
}

inline CoefficientVector coefficient_vector_from_json(const json& j) {
    if (!j.is_object() || !j.contains("a") || !j.at("a").is_array())
        throw DomainError("coefficient vector JSON needs an array field \"a\"");
    auto a = j.at("a").get<std::vector<double>>();
    if (j.contains("m") && j.at("m").get<long>() != static_cast<long>(a.size()) - 1)
        throw DomainError("coefficient vector JSON: m does not match length of a");
    return CoefficientVector(std::move(a), j.value("label", std::string{}));
}

inline json to_json(const LouboutinConstants& k) {
    return {{"A", k.A}, {"c", k.c}, {"lambda", k.lambda}, {"q_min", k.q_min}};
}

inline LouboutinConstants constants_from_json(const json& j) {
    return {j.at("A").get<double>(), j.at("c").get<double>(), j.at("lambda").get<double>(),
            j.at("q_min").get<double>()};
}

inline json to_json(const BoundReport& r) {
    return {{"q", r.q},         {"s_q", r.s_q},     {"F_value", r.F_value},
            {"bound", r.bound}, {"valid", r.valid}, {"reason", r.reason}};
}

inline BoundReport bound_report_from_json(const json& j) {
    return {j.at("q").get<double>(),     j.at("s_q").get<double>(),  j.at("F_value").get<double>(),
            j.at("bound").get<double>(), j.at("valid").get<bool>(), j.at("reason").get<std::string>()};
}

inline json to_json(const MinReport& r) {
    return {{"theta_star", r.theta_star},
            {"min_value", r.min_value},
            {"error_bound", r.error_bound},
            {"certified_lower", r.certified_lower()}};
}

inline json to_json(const GridCheckReport& r) {
    return {{"s_lo", r.s_lo},     {"s_hi", r.s_hi},       {"step", r.step},         {"margin", r.margin},
            {"worst_s", r.worst_s}, {"points", r.points}, {"pass", r.pass}};
}

// ---- AnnealConfig

inline const char* to_string(SearchMode m) { return m == SearchMode::general ? "general" : "order"; }

inline json to_json(const AnnealConfig& c) {
    return {{"m", c.m},
            {"d", c.d},
            {"B", c.B},
            {"S1", c.S1},
            {"S2", c.S2},
            {"rho", c.rho},
            {"temps", c.temps},
            {"M", c.M},
            {"seed", c.seed},
            {"restarts", c.restarts},
            {"threads", c.threads},
            {"phase1_budget", c.phase1_budget},
            {"trace", c.trace}};
}

/// Reads a config; absent fields take the defaults of `mode`. The schedule may be
/// given as an explicit "temps" list or as {"T1", "delta", "ell"}.
inline AnnealConfig anneal_config_from_json(const json& j, SearchMode mode) {
    AnnealConfig c;
    if (mode == SearchMode::order) {
        const int d = j.value("d", 0);
        if (d < 3) throw DomainError("order search config needs \"d\" >= 3");
        c = AnnealConfig::order_defaults(d);
    } else {
        c = AnnealConfig::general_defaults(j.value("m", 8));
    }
    c.m = j.value("m", c.m);
    c.B = j.value("B", c.B);
    c.S1 = j.value("S1", c.S1);
    c.S2 = j.value("S2", c.S2);
    c.rho = j.value("rho", c.rho);
    if (j.contains("temps")) {
        c.temps = j.at("temps").get<std::vector<double>>();
    } else if (j.contains("T1") || j.contains("delta") || j.contains("ell")) {
        c.temps = harmonic_schedule(j.value("T1", 0.1), j.value("delta", 1.6), j.value("ell", 10));
    }
    c.M = j.value("M", c.M);
    c.seed = j.value("seed", c.seed);
    c.restarts = j.value("restarts", c.restarts);
    c.threads = j.value("threads", c.threads);
    c.phase1_budget = j.value("phase1_budget", c.phase1_budget);
    c.trace = j.value("trace", c.trace);
    c.validate(mode);
    return c;
}

inline json to_json(const AnnealResult& r) {
    json j;
    j["mode"] = to_string(r.mode);
    j["status"] = r.status == SearchStatus::ok ? "ok" : "infeasible";
    j["best_vector"] = to_json(r.best_vector);
    const double a0 = r.best_vector[0];
    j["normalized_vector"] = to_json(r.best_vector.scaled(a0 != 0.0 ? 1.0 / a0 : 1.0));
    j["best_lambda"] = r.best_lambda;
    if (r.generator) j["generator"] = std::vector<double>(r.generator->coeffs().begin(), r.generator->coeffs().end());
    j["config"] = to_json(r.config);
    j["seed"] = r.seed;
    j["best_restart"] = r.best_restart;
    j["iterations"] = r.iterations;
    if (!r.trace.empty()) {
        json t = json::array();
        for (const auto& e : r.trace) t.push_back({e.iteration, e.value});
        j["trace"] = std::move(t);
    }
    return j;
}

inline json to_json(const ScanRecord& r) {
    return {{"q", r.q},           {"char_index", r.char_index}, {"order", r.order},
            {"parity", r.parity}, {"L1_abs", r.L1_abs},         {"product", r.product},
            {"ratio", r.ratio}};
}

inline ScanRecord scan_record_from_json(const json& j) {
    return {j.at("q").get<long>(),        j.at("char_index").get<long>(), j.at("order").get<long>(),
            j.at("parity").get<int>(),    j.at("L1_abs").get<double>(),   j.at("product").get<double>(),
            j.at("ratio").get<double>()};
}

/// Scan table as CSV: q,char_index,order,parity,L1_abs,product,ratio.
inline void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& rows) {
    out << "q,char_index,order,parity,L1_abs,product,ratio\n";
    out.precision(17);
    for (const auto& r : rows) {
        out << r.q << ',' << r.char_index << ',' << r.order << ',' << r.parity << ',' << r.L1_abs << ','
            << r.product << ',' << r.ratio << '\n';
    }
}

// ---- Run manifest embedded in every result file.

struct RunManifest {
    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::string output;
    std::string version = kToolVersion;
    double wall_time_s = 0.0;
};

inline json to_json(const RunManifest& m) {
    return {{"command", m.command}, {"config_path", m.config_path}, {"seed", m.seed},
            {"inputs", m.inputs},   {"output", m.output},           {"version", m.version},
            {"wall_time_s", m.wall_time_s}};
}

inline RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config_path = j.at("config_path").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.output = j.at("output").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.wall_time_s = j.at("wall_time_s").get<double>();
    return m;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError(path + ": " + e.what());
    }
}

}  // namespace lbound
