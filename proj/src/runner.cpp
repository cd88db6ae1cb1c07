#include "pdd/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

#include "pdd/benchmarks.hpp"
#include "pdd/moments.hpp"
#include "pdd/topo.hpp"

namespace pdd::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : j.items())
        if (!allowed.contains(item.key()))
            bad("unknown key '" + item.key() + "' in " + where);
}

const json* find(const json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

long long need_int(const json& v, const std::string& field) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
        bad("'" + field + "' must be an integer");
    return v.get<long long>();
}

double need_num(const json& v, const std::string& field) {
    if (!v.is_number()) bad("'" + field + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) bad("'" + field + "' must be finite");
    return x;
}

std::string need_str(const json& v, const std::string& field) {
    if (!v.is_string()) bad("'" + field + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> need_num_array(const json& v, const std::string& field) {
    if (!v.is_array()) bad("'" + field + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(need_num(e, field));
    return out;
}

std::vector<int> need_int_array(const json& v, const std::string& field) {
    if (!v.is_array()) bad("'" + field + "' must be an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(int(need_int(e, field)));
    return out;
}

reliability::Direction direction_from_name(const std::string& s) {
    if (s == "above") return reliability::Direction::above;
    if (s == "below") return reliability::Direction::below;
    bad("limit state direction must be \"above\" or \"below\", got \"" + s + "\"");
}

std::string direction_name(reliability::Direction d) {
    return d == reliability::Direction::above ? "above" : "below";
}

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Reference attachment keeps the report invariant: a relative error is
// present exactly when a reference is.
void attach(ValueWithReference& x, double ref) {
    if (!std::isfinite(ref)) return;
    x.reference = ref;
    const double denom = ref != 0.0 ? std::abs(ref) : 1.0;
    x.relative_error = std::abs(x.value - ref) / denom;
}

json value_to_json(const ValueWithReference& v) {
    json j;
    j["value"] = v.value;
    if (v.reference) j["reference"] = *v.reference;
    if (v.relative_error) j["relative_error"] = *v.relative_error;
    return j;
}

ValueWithReference value_from_json(const json& j) {
    ValueWithReference v;
    v.value = j.at("value").get<double>();
    if (const auto* r = find(j, "reference")) v.reference = r->get<double>();
    if (const auto* e = find(j, "relative_error")) v.relative_error = e->get<double>();
    return v;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

} // namespace

ProblemConfig ProblemConfig::from_json(const std::string& text, SweepGrid* sweep) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("top level must be an object");
    reject_unknown_keys(j,
                        {"oracle", "nu", "harmonics", "variables", "max_order", "max_degree",
                         "scheme", "perforation", "limit_states", "mcs", "cdf_grid", "out_dir",
                         "sweep"},
                        "the top level");
    if (!sweep && j.contains("sweep")) bad("'sweep' section is only valid for the sweep verb");

    ProblemConfig c;
    if (const auto* v = find(j, "oracle")) c.oracle = need_str(*v, "oracle");
    const bool is_disk = c.oracle == "disk_uniform";
    const bool is_trig = c.oracle == "disk_trig";
    if (!is_disk && !is_trig)
        bad("unknown oracle '" + c.oracle + "' (expected disk_uniform or disk_trig)");

    if (const auto* v = find(j, "nu")) {
        if (!is_disk) bad("'nu' only applies to the disk_uniform oracle");
        c.nu = need_num(*v, "nu");
        if (!(c.nu > -1.0 && c.nu < 0.5)) bad("'nu' must lie in (-1, 0.5)");
    }
    if (const auto* v = find(j, "harmonics")) {
        if (!is_trig) bad("'harmonics' only applies to the disk_trig oracle");
        c.harmonics = int(need_int(*v, "harmonics"));
        if (c.harmonics < 1) bad("'harmonics' must be >= 1");
    }
    if (const auto* v = find(j, "max_order")) {
        c.max_order = int(need_int(*v, "max_order"));
        if (c.max_order < 1) bad("'max_order' must be >= 1");
    }
    if (const auto* v = find(j, "max_degree")) {
        c.max_degree = int(need_int(*v, "max_degree"));
        if (c.max_degree < 1) bad("'max_degree' must be >= 1");
    }
    if (c.max_order > c.dimension()) bad("'max_order' exceeds the oracle input dimension");

    if (const auto* v = find(j, "scheme")) {
        if (!v->is_object()) bad("'scheme' must be an object");
        reject_unknown_keys(*v, {"refine_order", "nodes_per_dim", "reference"}, "'scheme'");
        if (const auto* r = find(*v, "refine_order")) {
            c.scheme.refine_order = int(need_int(*r, "scheme.refine_order"));
            if (c.scheme.refine_order != 0 && (c.scheme.refine_order < c.max_order ||
                                               c.scheme.refine_order > c.dimension()))
                bad("'scheme.refine_order' must satisfy max_order <= refine_order <= input "
                    "dimension");
        }
        if (const auto* q = find(*v, "nodes_per_dim")) {
            c.scheme.nodes_per_dim = int(need_int(*q, "scheme.nodes_per_dim"));
            if (c.scheme.nodes_per_dim != 0 && c.scheme.nodes_per_dim < c.max_degree + 1)
                bad("'scheme.nodes_per_dim' must be >= max_degree + 1");
        }
        if (const auto* p = find(*v, "reference")) {
            c.scheme.reference = need_num_array(*p, "scheme.reference");
            // Empty keeps the builder default (the componentwise mean).
            if (!c.scheme.reference.empty() &&
                int(c.scheme.reference.size()) != c.dimension())
                bad("'scheme.reference' dimension disagrees with the oracle");
        }
    }

    if (const auto* v = find(j, "perforation")) {
        if (!v->is_object()) bad("'perforation' must be an object");
        reject_unknown_keys(*v, {"center", "rho", "spatial_dim"}, "'perforation'");
        if (const auto* ce = find(*v, "center"))
            c.perforation_center = need_num_array(*ce, "perforation.center");
        if (const auto* r = find(*v, "rho")) {
            c.rho = need_num(*r, "perforation.rho");
            if (!(c.rho > 0.0 && c.rho < 1.0)) bad("'perforation.rho' must lie in (0, 1)");
        }
        if (const auto* d = find(*v, "spatial_dim")) {
            c.spatial_dim = int(need_int(*d, "perforation.spatial_dim"));
            if (c.spatial_dim != 2 && c.spatial_dim != 3)
                bad("'perforation.spatial_dim' must be 2 or 3");
        }
        if (!c.perforation_center.empty() &&
            int(c.perforation_center.size()) != c.spatial_dim)
            bad("'perforation.center' dimension disagrees with spatial_dim");
    }

    if (const auto* v = find(j, "limit_states")) {
        if (!v->is_array()) bad("'limit_states' must be an array");
        for (const auto& e : *v) {
            if (!e.is_object()) bad("each limit state must be an object");
            reject_unknown_keys(e, {"threshold", "direction"}, "a limit state");
            LimitConfig lc;
            if (const auto* t = find(e, "threshold"))
                lc.threshold = need_num(*t, "limit_states.threshold");
            else
                bad("limit state needs a 'threshold'");
            if (const auto* d = find(e, "direction"))
                lc.direction = direction_from_name(need_str(*d, "limit_states.direction"));
            c.limit_states.push_back(lc);
        }
    }

    if (const auto* v = find(j, "mcs")) {
        if (!v->is_object()) bad("'mcs' must be an object");
        reject_unknown_keys(*v, {"samples", "seed", "threads"}, "'mcs'");
        if (const auto* s = find(*v, "samples")) {
            c.samples = need_int(*s, "mcs.samples");
            if (c.samples < 1) bad("'mcs.samples' must be >= 1");
        }
        if (const auto* s = find(*v, "seed")) {
            if (!s->is_number_integer() && !s->is_number_unsigned())
                bad("'mcs.seed' must be an integer");
            if (s->is_number_integer() && s->get<long long>() < 0)
                bad("'mcs.seed' must be >= 0");
            c.seed = s->get<std::uint64_t>();
        }
        if (const auto* t = find(*v, "threads")) {
            c.threads = int(need_int(*t, "mcs.threads"));
            if (c.threads < 1 || c.threads > 256) bad("'mcs.threads' must lie in [1, 256]");
        }
    }

    if (const auto* v = find(j, "cdf_grid")) {
        c.cdf_grid = need_num_array(*v, "cdf_grid");
        for (size_t i = 1; i < c.cdf_grid.size(); ++i)
            if (!(c.cdf_grid[i - 1] < c.cdf_grid[i]))
                bad("'cdf_grid' must be strictly increasing");
    }

    if (const auto* v = find(j, "out_dir")) {
        c.out_dir = need_str(*v, "out_dir");
        if (c.out_dir.empty()) bad("'out_dir' must be nonempty");
    }

    if (const auto* v = find(j, "variables")) {
        if (!v->is_array()) bad("'variables' must be an array");
        if (int(v->size()) != c.dimension())
            bad("'variables' must list exactly " + std::to_string(c.dimension()) +
                " entries for this oracle");
        std::vector<rv::RandomVariable> comps;
        comps.reserve(v->size());
        for (const auto& e : *v) {
            if (!e.is_object()) bad("each variable must be an object");
            reject_unknown_keys(e, {"kind", "params"}, "a variable");
            if (!e.contains("kind") || !e.contains("params"))
                bad("each variable needs 'kind' and 'params'");
            rv::Kind kind;
            try {
                kind = rv::kind_from_name(need_str(e.at("kind"), "variables.kind"));
            } catch (const std::exception& ex) {
                bad(ex.what());
            }
            const auto params = need_num_array(e.at("params"), "variables.params");
            try {
                comps.push_back(rv::RandomVariable::from_params(kind, params));
            } catch (const std::exception& ex) {
                bad(std::string("invalid variable: ") + ex.what());
            }
        }
        c.variables = rv::RandomVector(std::move(comps));
    }

    if (sweep) {
        sweep->orders = {c.max_order};
        sweep->degrees = {c.max_degree};
        if (j.contains("sweep")) {
            const auto& v = j.at("sweep");
            if (!v.is_object()) bad("'sweep' must be an object");
            reject_unknown_keys(v, {"orders", "degrees"}, "'sweep'");
            if (v.contains("orders"))
                sweep->orders = need_int_array(v.at("orders"), "sweep.orders");
            if (v.contains("degrees"))
                sweep->degrees = need_int_array(v.at("degrees"), "sweep.degrees");
            for (const int s : sweep->orders)
                if (s < 1 || s > c.dimension())
                    bad("'sweep.orders' entries must lie in [1, N]");
            for (const int m : sweep->degrees)
                if (m < 1) bad("'sweep.degrees' entries must be >= 1");
        }
    }
    return c;
}

std::string ProblemConfig::to_json() const {
    json j;
    j["oracle"] = oracle;
    if (oracle == "disk_uniform") j["nu"] = nu;
    if (oracle == "disk_trig") j["harmonics"] = harmonics;
    j["max_order"] = max_order;
    j["max_degree"] = max_degree;
    j["scheme"]["refine_order"] = scheme.refine_order;
    j["scheme"]["nodes_per_dim"] = scheme.nodes_per_dim;
    j["scheme"]["reference"] = scheme.reference;
    j["perforation"]["center"] = perforation_center;
    j["perforation"]["rho"] = rho;
    j["perforation"]["spatial_dim"] = spatial_dim;
    auto limits = json::array();
    for (const auto& l : limit_states)
        limits.push_back({{"threshold", l.threshold}, {"direction", direction_name(l.direction)}});
    j["limit_states"] = std::move(limits);
    j["mcs"]["samples"] = samples;
    j["mcs"]["seed"] = seed;
    j["mcs"]["threads"] = threads;
    j["cdf_grid"] = cdf_grid;
    j["out_dir"] = out_dir;
    if (variables) {
        auto arr = json::array();
        for (const auto& v : variables->components()) {
            json e;
            e["kind"] = rv::kind_name(v.kind());
            e["params"] = std::vector<double>(v.params().begin(), v.params().end());
            arr.push_back(std::move(e));
        }
        j["variables"] = std::move(arr);
    }
    return j.dump(2);
}

std::string ProblemConfig::hash() const { return hex64(fnv64(to_json())); }

int ProblemConfig::dimension() const {
    return oracle == "disk_trig" ? 2 * harmonics + 3 : 2;
}

rv::RandomVector ProblemConfig::make_variables() const {
    if (variables) {
        if (variables->dimension() != dimension())
            bad("'variables' dimension disagrees with the oracle");
        return *variables;
    }
    return oracle == "disk_trig" ? bench::trig_random_vector(harmonics)
                                 : bench::disk_random_vector();
}

core::Oracle ProblemConfig::make_oracle() const {
    return oracle == "disk_trig" ? bench::trig_oracle(harmonics) : bench::disk_oracle(nu);
}

core::Oracle ProblemConfig::make_rate_oracle() const {
    return oracle == "disk_trig" ? bench::trig_rate_oracle(harmonics)
                                 : bench::disk_rate_oracle();
}

RunReport run(const ProblemConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if (config.oracle != "disk_uniform" && config.oracle != "disk_trig")
        bad("unknown oracle '" + config.oracle + "'");
    if (config.samples < 1) bad("'mcs.samples' must be >= 1");

    const auto v = config.make_variables();
    core::RddScheme scheme;
    scheme.refine_order = config.scheme.refine_order;
    scheme.nodes_per_dim = config.scheme.nodes_per_dim;
    scheme.reference = config.scheme.reference;
    const auto [y, z] = core::paired_build(config.make_oracle(), config.make_rate_oracle(), v,
                                           config.max_order, config.max_degree, scheme);

    RunReport r;
    r.config_hash = config.hash();
    r.seed = config.seed;
    r.oracle = config.oracle;
    r.max_order = config.max_order;
    r.max_degree = config.max_degree;
    r.refine_order = y.refine_order();
    r.oracle_points = y.oracle_points();

    const auto mom = moments::compute_moments(y);
    const auto sens = moments::compute_sensitivities(y, z);
    r.m1.value = mom.m1;
    r.m2.value = mom.m2;
    r.m3.value = mom.m3;
    r.dt_m1.value = sens.dt_m1;
    r.dt_m2.value = sens.dt_m2;
    r.dt_m3.value = sens.dt_m3;

    const bool stock_inputs = !config.variables.has_value();
    const bool center_hole =
        config.perforation_center.empty() ||
        std::all_of(config.perforation_center.begin(), config.perforation_center.end(),
                    [](double x) { return x == 0.0; });
    if (config.oracle == "disk_uniform" && stock_inputs) {
        const auto ref = bench::disk_reference_values(config.nu);
        attach(r.m1, ref.m1);
        attach(r.m2, ref.m2);
        attach(r.m3, ref.m3);
        attach(r.dt_m1, ref.dt_m1);
        attach(r.dt_m2, ref.dt_m2);
        attach(r.dt_m3, ref.dt_m3);
    } else if (config.oracle == "disk_trig") {
        const auto ref = bench::trig_exact_moments(v, config.harmonics);
        attach(r.m1, ref.m1);
        attach(r.m2, ref.m2);
        attach(r.m3, ref.m3);
        attach(r.dt_m1, ref.dt_m1);
        attach(r.dt_m2, ref.dt_m2);
        attach(r.dt_m3, ref.dt_m3);
    }

    topo::PerforationSpec perf;
    perf.center = config.perforation_center;
    perf.rho = config.rho;
    perf.spatial_dim = config.spatial_dim;

    for (const auto& lc : config.limit_states) {
        const reliability::LimitState limit{lc.threshold, lc.direction};
        // One pass measures both: the finite-difference estimator reports
        // the unperturbed failure probability on the same samples.
        const auto fd = reliability::dt_failure_probability(y, z, perf, limit, config.samples,
                                                            config.seed, config.threads);
        ReliabilityRow row;
        row.threshold = lc.threshold;
        row.direction = direction_name(lc.direction);
        row.probability.value = fd.base_estimate;
        row.probability_std_error = fd.base_std_error;
        row.dt_probability.value = fd.estimate;
        row.dt_std_error = fd.std_error;
        if (config.oracle == "disk_uniform" && stock_inputs && center_hole &&
            config.spatial_dim == 2 && lc.direction == reliability::Direction::above) {
            const auto ref = bench::disk_reference_values(config.nu);
            if (ref.threshold_in_window(lc.threshold)) {
                attach(row.probability, ref.failure_probability(lc.threshold));
                attach(row.dt_probability, ref.dt_failure_probability(lc.threshold));
            }
        }
        r.reliability.push_back(std::move(row));
    }

    if (!config.cdf_grid.empty())
        r.cdf = reliability::cdf_curve(y, v, config.samples, config.seed, config.cdf_grid,
                                       config.threads);

    r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
    return r;
}

std::vector<RunReport> sweep(const ProblemConfig& base, const SweepGrid& grid) {
    auto orders = grid.orders;
    auto degrees = grid.degrees;
    std::sort(orders.begin(), orders.end());
    std::sort(degrees.begin(), degrees.end());
    std::set<std::pair<int, int>> seen;
    std::vector<RunReport> out;
    for (const int s : orders)
        for (const int m : degrees) {
            if (!seen.insert({s, m}).second) {
                std::cerr << "warning: duplicate sweep cell (order=" << s << ", degree=" << m
                          << ") skipped\n";
                continue;
            }
            ProblemConfig c = base;
            c.max_order = s;
            c.max_degree = m;
            out.push_back(run(c));
        }
    return out;
}

std::string RunReport::to_json() const {
    json j;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["oracle"] = oracle;
    j["max_order"] = max_order;
    j["max_degree"] = max_degree;
    j["refine_order"] = refine_order;
    j["oracle_points"] = oracle_points;
    j["wall_time_seconds"] = wall_time_seconds;
    j["moments"]["m1"] = value_to_json(m1);
    j["moments"]["m2"] = value_to_json(m2);
    j["moments"]["m3"] = value_to_json(m3);
    j["sensitivities"]["dt_m1"] = value_to_json(dt_m1);
    j["sensitivities"]["dt_m2"] = value_to_json(dt_m2);
    j["sensitivities"]["dt_m3"] = value_to_json(dt_m3);
    auto rows = json::array();
    for (const auto& row : reliability) {
        json e;
        e["threshold"] = row.threshold;
        e["direction"] = row.direction;
        e["probability"] = value_to_json(row.probability);
        e["probability"]["std_error"] = row.probability_std_error;
        e["dt"] = value_to_json(row.dt_probability);
        e["dt"]["std_error"] = row.dt_std_error;
        rows.push_back(std::move(e));
    }
    j["reliability"] = std::move(rows);
    auto curve = json::array();
    for (const auto& [x, p] : cdf) curve.push_back({x, p});
    j["cdf"] = std::move(curve);
    return j.dump(2);
}

RunReport RunReport::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("report: invalid JSON: ") + e.what());
    }
    try {
        RunReport r;
        r.config_hash = j.at("config_hash").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.oracle = j.at("oracle").get<std::string>();
        r.max_order = j.at("max_order").get<int>();
        r.max_degree = j.at("max_degree").get<int>();
        r.refine_order = j.at("refine_order").get<int>();
        r.oracle_points = j.at("oracle_points").get<long long>();
        r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
        const auto& m = j.at("moments");
        r.m1 = value_from_json(m.at("m1"));
        r.m2 = value_from_json(m.at("m2"));
        r.m3 = value_from_json(m.at("m3"));
        const auto& s = j.at("sensitivities");
        r.dt_m1 = value_from_json(s.at("dt_m1"));
        r.dt_m2 = value_from_json(s.at("dt_m2"));
        r.dt_m3 = value_from_json(s.at("dt_m3"));
        for (const auto& e : j.at("reliability")) {
            ReliabilityRow row;
            row.threshold = e.at("threshold").get<double>();
            row.direction = e.at("direction").get<std::string>();
            row.probability = value_from_json(e.at("probability"));
            row.probability_std_error = e.at("probability").at("std_error").get<double>();
            row.dt_probability = value_from_json(e.at("dt"));
            row.dt_std_error = e.at("dt").at("std_error").get<double>();
            r.reliability.push_back(std::move(row));
        }
        for (const auto& e : j.at("cdf"))
            r.cdf.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
}

namespace {

void append_table_rows(const RunReport& r, std::string& moments, std::string& sens,
                       std::string& reli, std::string& cdf) {
    const std::string prefix =
        std::to_string(r.max_order) + "," + std::to_string(r.max_degree) + ",";
    const auto moment_row = [&](const char* name, const ValueWithReference& v) {
        return prefix + name + "," + num(v.value) + "," + opt_num(v.reference) + "," +
               opt_num(v.relative_error) + "\n";
    };
    moments += moment_row("m1", r.m1);
    moments += moment_row("m2", r.m2);
    moments += moment_row("m3", r.m3);
    sens += moment_row("dt_m1", r.dt_m1);
    sens += moment_row("dt_m2", r.dt_m2);
    sens += moment_row("dt_m3", r.dt_m3);
    for (const auto& row : r.reliability) {
        reli += prefix + num(row.threshold) + "," + row.direction + "," +
                num(row.probability.value) + "," + num(row.probability_std_error) + "," +
                opt_num(row.probability.reference) + "," +
                opt_num(row.probability.relative_error) + "," + num(row.dt_probability.value) +
                "," + num(row.dt_std_error) + "," + opt_num(row.dt_probability.reference) +
                "," + opt_num(row.dt_probability.relative_error) + "\n";
    }
    for (const auto& [x, p] : r.cdf) cdf += prefix + num(x) + "," + num(p) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_tables(const std::vector<RunReport>& reports, const std::string& dir,
                  const std::string& report_json) {
    const std::filesystem::path base(dir);
    std::filesystem::create_directories(base);
    std::string moments = "order,degree,moment,value,reference,relative_error\n";
    std::string sens = moments;
    std::string reli =
        "order,degree,threshold,direction,probability,probability_std_error,"
        "probability_reference,probability_relative_error,dt,dt_std_error,dt_reference,"
        "dt_relative_error\n";
    std::string cdf = "order,degree,value,probability\n";
    bool any_cdf = false;
    for (const auto& r : reports) {
        append_table_rows(r, moments, sens, reli, cdf);
        any_cdf = any_cdf || !r.cdf.empty();
    }
    write_file(base / "report.json", report_json);
    write_file(base / "moments.csv", moments);
    write_file(base / "sensitivities.csv", sens);
    write_file(base / "reliability.csv", reli);
    if (any_cdf) write_file(base / "cdf.csv", cdf);
}

} // namespace

void write_outputs(const RunReport& report, const std::string& dir) {
    write_tables({report}, dir, report.to_json() + "\n");
}

void write_sweep_outputs(const std::vector<RunReport>& reports, const std::string& dir) {
    std::string combined = "[\n";
    for (size_t i = 0; i < reports.size(); ++i) {
        std::istringstream in(reports[i].to_json());
        std::string line;
        while (std::getline(in, line)) combined += "  " + line + "\n";
        if (i + 1 < reports.size()) combined.insert(combined.size() - 1, ",");
    }
    combined += "]\n";
    write_tables(reports, dir, combined);
}

std::string reference_text(const std::string& benchmark) {
    std::ostringstream out;
    out.precision(10);
    if (benchmark == "disk_uniform") {
        const auto ref = bench::disk_reference_values(0.2);
        out << "disk_uniform closed-form references (nu = 0.2)\n"
            << "  m1    = " << ref.m1 << "\n"
            << "  m2    = " << ref.m2 << "\n"
            << "  m3    = " << ref.m3 << "\n"
            << "  dt_m1 = " << ref.dt_m1 << "\n"
            << "  dt_m2 = " << ref.dt_m2 << "\n"
            << "  dt_m3 = " << ref.dt_m3 << "\n"
            << "  failure window: thresholds in (" << 2.0 * std::numbers::pi * 0.8 << ", "
            << 4.0 * std::numbers::pi * 0.8 << ")\n"
            << "  P[y > 7.5]    = " << ref.failure_probability(7.5)
            << "   dt = " << ref.dt_failure_probability(7.5) << "\n"
            << "  P[y > 7.0]    = " << ref.failure_probability(7.0)
            << "   dt = " << ref.dt_failure_probability(7.0) << "\n";
        return out.str();
    }
    if (benchmark == "disk_trig") {
        const int harmonics = 25;
        const auto v = bench::trig_random_vector(harmonics);
        const auto ref = bench::trig_exact_moments(v, harmonics);
        out << std::scientific;
        out << "disk_trig exact references (25 harmonics, stock inputs)\n"
            << "  m1    = " << ref.m1 << "\n"
            << "  m2    = " << ref.m2 << "\n"
            << "  m3    = " << ref.m3 << "\n"
            << "  dt_m1 = " << ref.dt_m1 << "\n"
            << "  dt_m2 = " << ref.dt_m2 << "\n"
            << "  dt_m3 = " << ref.dt_m3 << "\n";
        return out.str();
    }
    throw std::invalid_argument("unknown benchmark '" + benchmark +
                                "' (expected disk_uniform or disk_trig)");
}

} // namespace pdd::cli
