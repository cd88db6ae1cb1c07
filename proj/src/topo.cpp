#include "pdd/topo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdd::topo {

namespace {
constexpr double pi = std::numbers::pi;
}

ElasticConstants::ElasticConstants(double young_modulus, double poisson_ratio)
    : young(young_modulus), poisson(poisson_ratio) {
    if (!(young > 0.0)) throw std::invalid_argument("elastic constants: modulus must be > 0");
    if (!(poisson > -1.0 && poisson < 0.5))
        throw std::invalid_argument("elastic constants: Poisson ratio must be in (-1, 0.5)");
}

SymStress SymStress::plane(double s11, double s22, double s12) {
    SymStress s;
    s.dim_ = 2;
    s.c_ = {s11, s22, s12, 0.0, 0.0, 0.0};
    return s;
}

SymStress SymStress::solid(double s11, double s22, double s33, double s12, double s13,
                           double s23) {
    SymStress s;
    s.dim_ = 3;
    s.c_ = {s11, s22, s33, s12, s13, s23};
    return s;
}

SymStress SymStress::hydrostatic(int dim, double p) {
    if (dim == 2) return plane(p, p, 0.0);
    if (dim == 3) return solid(p, p, p, 0.0, 0.0, 0.0);
    throw std::invalid_argument("stress tensor: dimension must be 2 or 3");
}

double SymStress::operator()(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
        throw std::out_of_range("stress tensor: index out of range");
    if (i > j) std::swap(i, j);
    if (dim_ == 2) return i == j ? c_[size_t(i)] : c_[2];
    if (i == j) return c_[size_t(i)];
    if (i == 0) return j == 1 ? c_[3] : c_[4];
    return c_[5]; // i == 1, j == 2
}

double SymStress::trace() const {
    double t = c_[0] + c_[1];
    if (dim_ == 3) t += c_[2];
    return t;
}

double SymStress::contract(const SymStress& o) const {
    if (dim_ != o.dim_)
        throw std::invalid_argument("stress contraction: dimension mismatch");
    if (dim_ == 2) return c_[0] * o.c_[0] + c_[1] * o.c_[1] + 2.0 * c_[2] * o.c_[2];
    return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2] +
           2.0 * (c_[3] * o.c_[3] + c_[4] * o.c_[4] + c_[5] * o.c_[5]);
}

std::array<double, 3> SymStress::normal_traction(std::span<const double> n) const {
    if (int(n.size()) != dim_)
        throw std::invalid_argument("stress traction: normal dimension mismatch");
    std::array<double, 3> t{0.0, 0.0, 0.0};
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) t[size_t(i)] += (*this)(i, j) * n[size_t(j)];
    return t;
}

void validate(const PerforationSpec& p) {
    if (!(p.rho > 0.0) || !(p.rho < 1.0))
        throw std::invalid_argument("perforation: radius must be in (0, 1)");
    if (p.spatial_dim != 2 && p.spatial_dim != 3)
        throw std::invalid_argument("perforation: spatial dimension must be 2 or 3");
    if (!p.center.empty() && int(p.center.size()) != p.spatial_dim)
        throw std::invalid_argument("perforation: center dimension disagrees with spatial "
                                    "dimension");
}

AmplificationCoefficients amplification_coefficients(ElasticCase c, const ElasticConstants& el) {
    const double e = el.young;
    const double nu = el.poisson;
    switch (c) {
    case ElasticCase::plane_stress:
        return {4.0 * pi / e, -pi / e};
    case ElasticCase::plane_strain: {
        const double f = 1.0 - nu * nu;
        return {f * 4.0 * pi / e, -f * pi / e};
    }
    case ElasticCase::three_d: {
        const double d = e * (7.0 - 5.0 * nu);
        return {20.0 * pi * (1.0 - nu) * (1.0 + nu) / d,
                -2.0 * pi * (1.0 - nu) * (1.0 + 5.0 * nu) / d};
    }
    }
    throw std::invalid_argument("amplification: unknown elastic case");
}

double amplification_contract(ElasticCase c, const ElasticConstants& el,
                              const SymStress& adjoint, const SymStress& direct) {
    const int need = c == ElasticCase::three_d ? 3 : 2;
    if (adjoint.dimension() != need || direct.dimension() != need)
        throw std::invalid_argument("amplification: stress dimension does not match the "
                                    "elastic case");
    const auto [k1, k2] = amplification_coefficients(c, el);
    return k1 * adjoint.contract(direct) + k2 * adjoint.trace() * direct.trace();
}

EshelbyConstants eshelby_constants(const ElasticConstants& el) {
    const double e = el.young;
    const double nu = el.poisson;
    return {(1.0 + nu) / (2.0 * e),
            2.0 * (4.0 - 5.0 * nu * nu - nu) / (e * (7.0 - 5.0 * nu))};
}

std::array<double, 3> external_displacement(ElasticCase c, const ElasticConstants& el,
                                            const SymStress& sigma, std::span<const double> n,
                                            double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("cavity displacement: radius must be > 0");
    const int need = c == ElasticCase::three_d ? 3 : 2;
    if (sigma.dimension() != need || int(n.size()) != need)
        throw std::invalid_argument("cavity displacement: dimension mismatch");
    double norm2 = 0.0;
    for (const double v : n) norm2 += v * v;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument("cavity displacement: normal must have unit length");

    const double e = el.young;
    const double nu = el.poisson;
    const double tr = sigma.trace();
    const auto t = sigma.normal_traction(n);

    double cn = 0.0, ct = 0.0; // u = rho (cn tr(sigma) n + ct n.sigma)
    switch (c) {
    case ElasticCase::plane_stress:
        cn = (nu - 1.0) / e;
        ct = (3.0 - nu) / e;
        break;
    case ElasticCase::plane_strain:
        cn = (1.0 + nu) * (2.0 * nu - 1.0) / e;
        ct = (1.0 + nu) * (3.0 - 4.0 * nu) / e;
        break;
    case ElasticCase::three_d: {
        const auto [a, b] = eshelby_constants(el);
        cn = (a - b) / 3.0;
        ct = b;
        break;
    }
    }

    std::array<double, 3> u{0.0, 0.0, 0.0};
    for (int i = 0; i < need; ++i)
        u[size_t(i)] = rho * (cn * tr * n[size_t(i)] + ct * t[size_t(i)]);
    return u;
}

RingCheckReport asymptotic_ring_check(double y_disk, const std::function<double(double)>& y_ring,
                                      double dt_value, int spatial_dim) {
    if (spatial_dim != 2 && spatial_dim != 3)
        throw std::invalid_argument("ring check: spatial dimension must be 2 or 3");

    RingCheckReport rep;
    rep.dt_value = dt_value;
    const int steps = 7;
    for (int k = 0; k < steps; ++k) {
        const double rho = 0.1 * std::pow(0.5, k);
        const double scale = spatial_dim == 2 ? rho * rho : rho * rho * rho;
        rep.rho.push_back(rho);
        rep.quotient.push_back((y_ring(rho) - y_disk) / scale);
    }

    const double mag = std::max({std::abs(dt_value), std::abs(y_disk), 1.0});
    const double floor = 1e-10 * mag;
    std::vector<double> res(size_t(steps), 0.0);
    bool all_small = true;
    for (int k = 0; k < steps; ++k) {
        res[size_t(k)] = std::abs(rep.quotient[size_t(k)] - dt_value);
        if (res[size_t(k)] > floor) all_small = false;
    }
    if (all_small) {
        rep.observed_rate = 0.0;
        rep.converged = true;
        return rep;
    }

    // Decay exponent from consecutive residuals still above roundoff.
    double rate_sum = 0.0;
    int rate_count = 0;
    for (int k = 0; k + 1 < steps; ++k) {
        if (res[size_t(k)] > floor && res[size_t(k + 1)] > floor &&
            res[size_t(k + 1)] < res[size_t(k)]) {
            rate_sum += std::log2(res[size_t(k)] / res[size_t(k + 1)]);
            ++rate_count;
        }
    }
    if (rate_count == 0) {
        rep.observed_rate = 0.0;
        rep.converged = false;
        return rep;
    }
    rep.observed_rate = rate_sum / rate_count;
    const bool rate_ok = std::abs(rep.observed_rate - 2.0) <= 0.4;
    const bool approaches = res[size_t(steps - 1)] < res[0] || res[size_t(steps - 1)] <= floor;
    rep.converged = rate_ok && approaches;
    return rep;
}

} // namespace pdd::topo
