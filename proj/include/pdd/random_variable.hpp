#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pdd/rng.hpp"

namespace pdd::rv {

enum class Kind { uniform, inverse_uniform, four_param_beta, truncated_gaussian };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

// One bounded input distribution with exact pdf/cdf, closed-form raw
// moments, and reproducible sampling. Immutable after construction;
// invalid parameters are rejected by the factory functions.
class RandomVariable {
public:
    static RandomVariable uniform(double lo, double hi);

    // Density c/x^2 on [lo, hi] with c = lo*hi/(hi-lo); the law of 1/U for
    // U uniform on [1/hi, 1/lo]. Requires 0 < lo < hi.
    static RandomVariable inverse_uniform(double lo, double hi);

    // Beta(alpha, beta) rescaled to [lo, hi]; alpha, beta >= 1 so the
    // density is bounded and rejection sampling has a finite envelope.
    static RandomVariable four_param_beta(double alpha, double beta, double lo, double hi);

    // Support [mu-3s, mu+3s] with s = cv*mu; matching mean and variance on
    // that support forces alpha = beta = 4 (var = 9s^2/(2a+1) = s^2).
    static RandomVariable four_param_beta_mean_cv(double mean, double cv);

    // Gaussian(mu, sigma) restricted to [mu-D, mu+D], renormalized.
    static RandomVariable truncated_gaussian(double mu, double sigma, double half_width);

    // Rebuild from (kind, params()) as produced by serialization.
    static RandomVariable from_params(Kind kind, std::span<const double> params);

    Kind kind() const { return kind_; }
    double lower() const { return lo_; }
    double upper() const { return hi_; }
    std::span<const double> params() const;

    double pdf(double x) const;
    double cdf(double x) const;
    double raw_moment(int r) const;
    double mean() const { return raw_moment(1); }
    double sample(RandomStream& stream) const;

    bool operator==(const RandomVariable& o) const;

private:
    RandomVariable() = default;

    Kind kind_ = Kind::uniform;
    double lo_ = 0.0, hi_ = 1.0;
    std::array<double, 4> p_{};  // kind-specific; see factories
    int n_params_ = 0;
};

// Ordered list of mutually independent components.
class RandomVector {
public:
    RandomVector() = default;
    explicit RandomVector(std::vector<RandomVariable> components);

    int dimension() const { return int(comps_.size()); }
    const RandomVariable& operator[](int i) const { return comps_[size_t(i)]; }
    const std::vector<RandomVariable>& components() const { return comps_; }

    std::vector<double> mean() const;
    double joint_pdf(std::span<const double> x) const;
    void sample(RandomStream& stream, std::span<double> out) const;

    bool operator==(const RandomVector& o) const { return comps_ == o.comps_; }

private:
    std::vector<RandomVariable> comps_;
};

} // namespace pdd::rv
