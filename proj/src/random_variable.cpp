#include "pdd/random_variable.hpp"

#include <cmath>
#include <stdexcept>

namespace pdd::rv {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the regularized incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    const double eps = 1e-15, fpmin = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

} // namespace

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::uniform: return "uniform";
        case Kind::inverse_uniform: return "inverse_uniform";
        case Kind::four_param_beta: return "four_param_beta";
        case Kind::truncated_gaussian: return "truncated_gaussian";
    }
    throw std::logic_error("kind_name: bad enum");
}

Kind kind_from_name(const std::string& name) {
    if (name == "uniform") return Kind::uniform;
    if (name == "inverse_uniform") return Kind::inverse_uniform;
    if (name == "four_param_beta") return Kind::four_param_beta;
    if (name == "truncated_gaussian") return Kind::truncated_gaussian;
    throw std::invalid_argument("unknown distribution kind: " + name);
}

RandomVariable RandomVariable::uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
    RandomVariable v;
    v.kind_ = Kind::uniform;
    v.lo_ = lo;
    v.hi_ = hi;
    v.p_ = {lo, hi, 0, 0};
    v.n_params_ = 2;
    return v;
}

RandomVariable RandomVariable::inverse_uniform(double lo, double hi) {
    if (!(0.0 < lo && lo < hi))
        throw std::invalid_argument("inverse_uniform: requires 0 < lo < hi");
    RandomVariable v;
    v.kind_ = Kind::inverse_uniform;
    v.lo_ = lo;
    v.hi_ = hi;
    v.p_ = {lo, hi, 0, 0};
    v.n_params_ = 2;
    return v;
}

RandomVariable RandomVariable::four_param_beta(double alpha, double beta, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("four_param_beta: requires lo < hi");
    if (!(alpha >= 1.0 && beta >= 1.0))
        throw std::invalid_argument("four_param_beta: requires alpha, beta >= 1");
    RandomVariable v;
    v.kind_ = Kind::four_param_beta;
    v.lo_ = lo;
    v.hi_ = hi;
    v.p_ = {alpha, beta, lo, hi};
    v.n_params_ = 4;
    return v;
}

RandomVariable RandomVariable::four_param_beta_mean_cv(double mean, double cv) {
    if (!(cv > 0.0)) throw std::invalid_argument("four_param_beta_mean_cv: requires cv > 0");
    if (mean == 0.0) throw std::invalid_argument("four_param_beta_mean_cv: requires mean != 0");
    double s = std::abs(cv * mean);
    return four_param_beta(4.0, 4.0, mean - 3.0 * s, mean + 3.0 * s);
}

RandomVariable RandomVariable::truncated_gaussian(double mu, double sigma, double half_width) {
    if (!(sigma > 0.0)) throw std::invalid_argument("truncated_gaussian: requires sigma > 0");
    if (!(half_width > 0.0))
        throw std::invalid_argument("truncated_gaussian: requires half_width > 0");
    RandomVariable v;
    v.kind_ = Kind::truncated_gaussian;
    v.lo_ = mu - half_width;
    v.hi_ = mu + half_width;
    v.p_ = {mu, sigma, half_width, 0};
    v.n_params_ = 3;
    return v;
}

RandomVariable RandomVariable::from_params(Kind kind, std::span<const double> params) {
    auto need = [&](size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("from_params: wrong parameter count for " +
                                        std::string(kind_name(kind)));
    };
    switch (kind) {
    case Kind::uniform:
        need(2);
        return uniform(params[0], params[1]);
    case Kind::inverse_uniform:
        need(2);
        return inverse_uniform(params[0], params[1]);
    case Kind::four_param_beta:
        need(4);
        return four_param_beta(params[0], params[1], params[2], params[3]);
    case Kind::truncated_gaussian:
        need(3);
        return truncated_gaussian(params[0], params[1], params[2]);
    }
    throw std::invalid_argument("from_params: unknown kind");
}

std::span<const double> RandomVariable::params() const {
    return {p_.data(), size_t(n_params_)};
}

double RandomVariable::pdf(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    switch (kind_) {
        case Kind::uniform:
            return 1.0 / (hi_ - lo_);
        case Kind::inverse_uniform:
            return lo_ * hi_ / (hi_ - lo_) / (x * x);
        case Kind::four_param_beta: {
            double a = p_[0], b = p_[1], w = hi_ - lo_;
            double t = (x - lo_) / w;
            if (t == 0.0) return a > 1.0 ? 0.0 : std::exp(-log_beta(a, b)) / w;
            if (t == 1.0) return b > 1.0 ? 0.0 : std::exp(-log_beta(a, b)) / w;
            return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) -
                            log_beta(a, b)) /
                   w;
        }
        case Kind::truncated_gaussian: {
            double mu = p_[0], sg = p_[1], d = p_[2] / p_[1];
            double z = norm_cdf(d) - norm_cdf(-d);
            return norm_pdf((x - mu) / sg) / (sg * z);
        }
    }
    throw std::logic_error("pdf: bad enum");
}

double RandomVariable::cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    switch (kind_) {
        case Kind::uniform:
            return (x - lo_) / (hi_ - lo_);
        case Kind::inverse_uniform:
            return lo_ * hi_ / (hi_ - lo_) * (1.0 / lo_ - 1.0 / x);
        case Kind::four_param_beta:
            return reg_inc_beta(p_[0], p_[1], (x - lo_) / (hi_ - lo_));
        case Kind::truncated_gaussian: {
            double mu = p_[0], sg = p_[1], d = p_[2] / p_[1];
            double z = norm_cdf(d) - norm_cdf(-d);
            return (norm_cdf((x - mu) / sg) - norm_cdf(-d)) / z;
        }
    }
    throw std::logic_error("cdf: bad enum");
}

double RandomVariable::raw_moment(int r) const {
    if (r < 0) throw std::invalid_argument("raw_moment: requires r >= 0");
    if (r == 0) return 1.0;
    switch (kind_) {
        case Kind::uniform: {
            // (hi^{r+1} - lo^{r+1}) / ((r+1)(hi-lo))
            double num = std::pow(hi_, r + 1) - std::pow(lo_, r + 1);
            return num / ((r + 1) * (hi_ - lo_));
        }
        case Kind::inverse_uniform: {
            double c = lo_ * hi_ / (hi_ - lo_);
            if (r == 1) return c * std::log(hi_ / lo_);
            return c * (std::pow(hi_, r - 1) - std::pow(lo_, r - 1)) / (r - 1);
        }
        case Kind::four_param_beta: {
            // E[(lo + w B)^r], B ~ Beta(a,b): E[B^k] = prod_{i<k} (a+i)/(a+b+i)
            double a = p_[0], b = p_[1], w = hi_ - lo_;
            double total = 0.0;
            for (int k = 0; k <= r; ++k) {
                double eb = 1.0;
                for (int i = 0; i < k; ++i) eb *= (a + i) / (a + b + i);
                total += binom(r, k) * std::pow(lo_, r - k) * std::pow(w, k) * eb;
            }
            return total;
        }
        case Kind::truncated_gaussian: {
            // Standardized truncated moments on [-d, d]:
            // M_r = (r-1) M_{r-2} - (b^{r-1} phi(b) - a^{r-1} phi(a)) / Z
            double mu = p_[0], sg = p_[1], d = p_[2] / p_[1];
            double z = norm_cdf(d) - norm_cdf(-d);
            std::vector<double> M(size_t(r) + 1, 0.0);
            M[0] = 1.0;
            for (int k = 1; k <= r; ++k) {
                double tail = (std::pow(d, k - 1) - std::pow(-d, k - 1)) * norm_pdf(d) / z;
                double prev = (k >= 2) ? (k - 1) * M[size_t(k - 2)] : 0.0;
                M[size_t(k)] = prev - tail;
            }
            double total = 0.0;
            for (int k = 0; k <= r; ++k)
                total += binom(r, k) * std::pow(mu, r - k) * std::pow(sg, k) * M[size_t(k)];
            return total;
        }
    }
    throw std::logic_error("raw_moment: bad enum");
}

double RandomVariable::sample(RandomStream& stream) const {
    switch (kind_) {
        case Kind::uniform:
            return lo_ + stream.next_unit() * (hi_ - lo_);
        case Kind::inverse_uniform: {
            double c = lo_ * hi_ / (hi_ - lo_);
            return 1.0 / (1.0 / lo_ - stream.next_unit() / c);
        }
        case Kind::four_param_beta: {
            double a = p_[0], b = p_[1], w = hi_ - lo_;
            // Integer shapes: the a-th smallest of a+b-1 uniforms is
            // Beta(a, b) exactly, with a fixed draw count per sample.
            if (a == std::floor(a) && b == std::floor(b) && a + b <= 17.0) {
                const int n = int(a + b) - 1, k = int(a);
                double u[16];
                for (int i = 0; i < n; ++i) {
                    double x = stream.next_unit();
                    int j = i;
                    while (j > 0 && u[j - 1] > x) {
                        u[j] = u[j - 1];
                        --j;
                    }
                    u[j] = x;
                }
                return lo_ + w * u[k - 1];
            }
            // Rejection under a constant envelope at the mode (alpha,beta >= 1).
            double mode;
            if (a + b == 2.0)
                mode = 0.5 * (lo_ + hi_);
            else
                mode = lo_ + w * (a - 1.0) / (a + b - 2.0);
            double fmax = pdf(std::min(std::max(mode, lo_), hi_));
            while (true) {
                double x = lo_ + stream.next_unit() * w;
                if (stream.next_unit() * fmax <= pdf(x)) return x;
            }
        }
        case Kind::truncated_gaussian: {
            double mu = p_[0], sg = p_[1], hw = p_[2];
            while (true) {
                double x = mu + sg * stream.next_normal();
                if (x >= mu - hw && x <= mu + hw) return x;
            }
        }
    }
    throw std::logic_error("sample: bad enum");
}

bool RandomVariable::operator==(const RandomVariable& o) const {
    return kind_ == o.kind_ && lo_ == o.lo_ && hi_ == o.hi_ && n_params_ == o.n_params_ &&
           p_ == o.p_;
}

RandomVector::RandomVector(std::vector<RandomVariable> components)
    : comps_(std::move(components)) {
    if (comps_.empty()) throw std::invalid_argument("RandomVector: requires N >= 1");
}

std::vector<double> RandomVector::mean() const {
    std::vector<double> m(comps_.size());
    for (size_t i = 0; i < comps_.size(); ++i) m[i] = comps_[i].mean();
    return m;
}

double RandomVector::joint_pdf(std::span<const double> x) const {
    if (int(x.size()) != dimension())
        throw std::invalid_argument("joint_pdf: dimension mismatch");
    double p = 1.0;
    for (size_t i = 0; i < comps_.size(); ++i) p *= comps_[i].pdf(x[i]);
    return p;
}

void RandomVector::sample(RandomStream& stream, std::span<double> out) const {
    if (int(out.size()) != dimension())
        throw std::invalid_argument("sample: dimension mismatch");
    for (size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i].sample(stream);
}

} // namespace pdd::rv
