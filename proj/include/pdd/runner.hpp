#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdd/random_variable.hpp"
#include "pdd/rdd.hpp"
#include "pdd/reliability.hpp"

namespace pdd::cli {

// Coefficient-estimation knobs; zero / empty fields pick builder defaults
// (refine_order = max_order, nodes_per_dim = max_degree + 2, reference =
// input means).
struct SchemeConfig {
    int refine_order = 0;
    int nodes_per_dim = 0;
    std::vector<double> reference;
};

struct LimitConfig {
    double threshold = 0.0;
    reliability::Direction direction = reliability::Direction::above;
};

struct SweepGrid {
    std::vector<int> orders;
    std::vector<int> degrees;
};

// Declarative description of one analysis: benchmark oracle, truncation,
// perforation, limit states, sampling budget and output directory.
struct ProblemConfig {
    std::string oracle = "disk_uniform"; // or "disk_trig"
    double nu = 0.2;                     // disk_uniform: fixed Poisson ratio
    int harmonics = 25;                  // disk_trig: pressure harmonic count
    std::optional<rv::RandomVector> variables; // override of the stock inputs

    int max_order = 2;
    int max_degree = 3;
    SchemeConfig scheme;

    std::vector<double> perforation_center; // empty = origin
    double rho = 0.05;
    int spatial_dim = 2;

    std::vector<LimitConfig> limit_states;
    long long samples = 1000000;
    std::uint64_t seed = 42;
    int threads = 1;
    std::vector<double> cdf_grid;
    std::string out_dir = ".";

    // Parses and validates with field-level messages; unknown keys are
    // rejected. A "sweep" section is accepted only when `sweep` is non-null.
    static ProblemConfig from_json(const std::string& text, SweepGrid* sweep = nullptr);
    std::string to_json() const; // canonical: defaults filled in, keys sorted
    std::string hash() const;    // FNV-1a 64 over the canonical form, as hex

    int dimension() const; // input dimension implied by the oracle choice
    rv::RandomVector make_variables() const;
    core::Oracle make_oracle() const;
    core::Oracle make_rate_oracle() const;
};

struct ValueWithReference {
    double value = 0.0;
    std::optional<double> reference;
    std::optional<double> relative_error; // |value - ref| / |ref|, present iff reference

    bool operator==(const ValueWithReference&) const = default;
};

struct ReliabilityRow {
    double threshold = 0.0;
    std::string direction; // "above" | "below"
    ValueWithReference probability;
    ValueWithReference dt_probability;
    double probability_std_error = 0.0;
    double dt_std_error = 0.0;

    bool operator==(const ReliabilityRow&) const = default;
};

struct RunReport {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string oracle;
    int max_order = 0;
    int max_degree = 0;
    int refine_order = 0;
    long long oracle_points = 0;
    double wall_time_seconds = 0.0;

    ValueWithReference m1, m2, m3;
    ValueWithReference dt_m1, dt_m2, dt_m3;
    std::vector<ReliabilityRow> reliability;
    std::vector<std::pair<double, double>> cdf;

    std::string to_json() const;
    static RunReport from_json(const std::string& text);

    bool operator==(const RunReport&) const = default;
};

// Builds the paired surrogates once, then derives moments, sensitivities,
// reliability rows and the optional CDF from them. Closed-form references
// are attached where the benchmark provides them.
RunReport run(const ProblemConfig& config);

// Independent runs over the (order, degree) grid, rows ordered order-major
// ascending; duplicate cells are dropped with a warning on stderr.
std::vector<RunReport> sweep(const ProblemConfig& base, const SweepGrid& grid);

// report.json plus moments.csv / sensitivities.csv / reliability.csv /
// cdf.csv under dir; the sweep variant emits one row per report.
void write_outputs(const RunReport& report, const std::string& dir);
void write_sweep_outputs(const std::vector<RunReport>& reports, const std::string& dir);

// Closed-form reference values for "disk_uniform" or "disk_trig", as text.
std::string reference_text(const std::string& benchmark);

} // namespace pdd::cli
