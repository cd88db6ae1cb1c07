#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pdd/random_variable.hpp"
#include "pdd/rdd.hpp"
#include "pdd/surrogate.hpp"
#include "pdd/topo.hpp"

namespace pdd::reliability {

enum class Direction { below, above };

struct LimitState {
    double threshold = 0.0;
    Direction direction = Direction::above;
};

enum class Combine { single, union_of, intersection_of };

// One or more surrogate limit states combined into a failure event:
// union fails when any member fails (series), intersection when all do
// (parallel). The surrogates are borrowed for the duration of the call.
struct FailureSpec {
    std::vector<std::reference_wrapper<const core::PddSurrogate>> surrogates;
    std::vector<LimitState> limits; // one per surrogate
    Combine combine = Combine::single;
};

struct McsResult {
    double estimate = 0.0;
    double std_error = 0.0; // binomial, sqrt(p(1-p)/L)
    long long sample_count = 0;
    uint64_t seed = 0;
};

// Finite-difference sensitivity estimate plus the unperturbed failure
// probability measured on the same samples.
struct FdResult {
    double estimate = 0.0;
    double std_error = 0.0;
    double base_estimate = 0.0;
    double base_std_error = 0.0;
    long long sample_count = 0;
    uint64_t seed = 0;
};

// Sampling is driven by per-sample substreams keyed by (seed, sample
// index) and indicator counts are integers, so every estimate below is
// bit-reproducible for a fixed seed regardless of the thread count.

McsResult failure_probability(const FailureSpec& spec, const rv::RandomVector& v,
                              long long n_samples, uint64_t seed, int threads = 1);

// Same estimator with an exact response function in place of a surrogate.
McsResult failure_probability(const core::Oracle& fn, LimitState limit,
                              const rv::RandomVector& v, long long n_samples, uint64_t seed,
                              int threads = 1);

// d P_F / d(perforation volume): evaluates the response and its perturbed
// variant y + rho^n * rate on common samples and differences the failure
// indicators, divided by rho^n.
FdResult dt_failure_probability(const core::PddSurrogate& y, const core::PddSurrogate& rate,
                                const topo::PerforationSpec& perf, LimitState limit,
                                long long n_samples, uint64_t seed, int threads = 1);

// Reference estimator: the same indicator difference, but with exact
// responses of the intact and perforated domains supplied directly.
FdResult crude_mcs_fd(const core::Oracle& y_exact, const core::Oracle& y_ring_exact,
                      const rv::RandomVector& v, const topo::PerforationSpec& perf,
                      LimitState limit, long long n_samples, uint64_t seed, int threads = 1);

// Empirical CDF of the surrogate response at the supplied grid ordinates.
std::vector<std::pair<double, double>> cdf_curve(const core::PddSurrogate& s,
                                                 const rv::RandomVector& v, long long n_samples,
                                                 uint64_t seed, std::span<const double> grid,
                                                 int threads = 1);

} // namespace pdd::reliability
