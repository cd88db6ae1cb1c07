#include "pdd/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdd/orthopoly.hpp"

namespace pdd::bench {

namespace {
constexpr double pi = std::numbers::pi;

void check_young(double young) {
    if (!(young > 0.0))
        throw std::invalid_argument("disk benchmark: modulus must be > 0");
}

void check_pressure(const HarmonicPressure& p) {
    if (p.ek.size() != p.dk.size())
        throw std::invalid_argument("harmonic pressure: cosine/sine array length mismatch");
}
} // namespace

double disk_compliance(double young, double p0, double nu) {
    check_young(young);
    return 2.0 * pi * (1.0 - nu) * p0 * p0 / young;
}

double disk_ring_compliance(double young, double p0, double nu, double rho) {
    check_young(young);
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("disk benchmark: hole radius must be in [0, 1)");
    const double r2 = rho * rho;
    return 2.0 * pi * p0 * p0 * ((1.0 + nu) * r2 + (1.0 - nu)) / (young * (1.0 - r2));
}

double disk_dt_center(double young, double p0) {
    check_young(young);
    return 4.0 * pi * p0 * p0 / young;
}

double disk_pdf_compliance(double y, double nu) {
    const double g = pi * (1.0 - nu); // pieces live on [g/2, g), [g, 2g), [2g, 4g)
    if (!(y >= 0.5 * g) || !(y < 4.0 * g)) return 0.0;
    const double c = 1.0 / g;
    const double inv_sqrt = std::sqrt(2.0 * g / y); // (y / 2g)^(-1/2)
    if (y < g) return c * (2.0 - inv_sqrt);
    if (y < 2.0 * g) return c * inv_sqrt * (std::numbers::sqrt2 - 1.0);
    return c * (std::numbers::sqrt2 * inv_sqrt - 1.0);
}

rv::RandomVector disk_random_vector() {
    return rv::RandomVector({rv::RandomVariable::inverse_uniform(2.0, 4.0),
                             rv::RandomVariable::uniform(1.0, 2.0)});
}

core::Oracle disk_oracle(double nu) {
    return [nu](std::span<const double> x) {
        if (x.size() != 2) throw std::invalid_argument("disk response: needs (E, p0)");
        return disk_compliance(x[0], x[1], nu);
    };
}

core::Oracle disk_rate_oracle() {
    return [](std::span<const double> x) {
        if (x.size() != 2) throw std::invalid_argument("disk rate: needs (E, p0)");
        return disk_dt_center(x[0], x[1]);
    };
}

core::Oracle disk_ring_oracle(double nu, double rho) {
    return [nu, rho](std::span<const double> x) {
        if (x.size() != 2) throw std::invalid_argument("disk ring response: needs (E, p0)");
        return disk_ring_compliance(x[0], x[1], nu, rho);
    };
}

DiskReferenceValues disk_reference_values(double nu) {
    if (!(nu > -1.0 && nu < 0.5))
        throw std::invalid_argument("disk reference: Poisson ratio must be in (-1, 0.5)");
    DiskReferenceValues r;
    r.nu = nu;
    const double f = 1.0 - nu;
    r.m1 = 7.0 * pi / 4.0 * f;
    r.m2 = 217.0 * pi * pi / 60.0 * f * f;
    r.m3 = 1905.0 * pi * pi * pi / 224.0 * f * f * f;
    r.dt_m1 = 7.0 * pi / 2.0;
    r.dt_m2 = 217.0 * pi * pi / 15.0 * f;
    r.dt_m3 = 5715.0 * pi * pi * pi / 112.0 * f * f;
    return r;
}

bool DiskReferenceValues::threshold_in_window(double ybar) const {
    return ybar > 2.0 * pi * (1.0 - nu) && ybar < 4.0 * pi * (1.0 - nu);
}

double DiskReferenceValues::failure_probability(double ybar) const {
    if (!threshold_in_window(ybar))
        throw std::domain_error("disk reference: threshold outside the closed-form window "
                                "(2 pi (1-nu), 4 pi (1-nu))");
    const double t = ybar / (2.0 * pi * (1.0 - nu));
    return 4.0 + 2.0 * t - 4.0 * std::sqrt(2.0 * t);
}

double DiskReferenceValues::dt_failure_probability(double ybar) const {
    if (!threshold_in_window(ybar))
        throw std::domain_error("disk reference: threshold outside the closed-form window "
                                "(2 pi (1-nu), 4 pi (1-nu))");
    // The center perturbation rate is the deterministic map 2 y / (1-nu),
    // so the indicator difference collapses onto the density at the
    // threshold.
    return 2.0 * ybar / (1.0 - nu) * disk_pdf_compliance(ybar, nu);
}

double trig_compliance(const HarmonicPressure& p, double young, double nu) {
    check_young(young);
    check_pressure(p);
    double acc = 2.0 * p.d0 * p.d0 * pi * (1.0 - nu);
    for (int k = 1; k <= p.harmonics(); ++k) {
        const double dk = p.dk[size_t(k - 1)], ek = p.ek[size_t(k - 1)];
        acc += (dk * dk + ek * ek) * pi * (nu + 2.0 * k + 1.0) / (double(k) * double(k + 2));
    }
    return acc / young;
}

double trig_ring_compliance(const HarmonicPressure& p, double young, double nu, double rho) {
    check_young(young);
    check_pressure(p);
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("harmonic disk: hole radius must be in (0, 1)");
    const double r2 = rho * rho;
    double acc = 2.0 * p.d0 * p.d0 * pi * (r2 * (1.0 + nu) + (1.0 - nu)) /
                 (young * (1.0 - r2));
    for (int k = 1; k <= p.harmonics(); ++k) {
        const double dk = p.dk[size_t(k - 1)], ek = p.ek[size_t(k - 1)];
        const double r2k = std::pow(r2, k);
        const double r2k2 = std::pow(r2, k + 2);
        const double geo = (1.0 - r2k) / (1.0 - r2); // sum_{j<k} rho^(2j)
        const double a_k = (dk * dk + ek * ek) * pi;
        const double b_k = r2k * (k + 2.0) *
                               (k * nu - (3.0 * k + 2.0) - (k * nu + k + 2.0) * r2) +
                           ((nu - 2.0 * k - 3.0) * r2k2 - (nu + 2.0 * k + 1.0)) * geo;
        const double c_k = double(k) * double(k + 2) * young;
        const double f_k = double(k) * double(k + 2) * r2k * (1.0 - r2) + (r2k2 - 1.0) * geo;
        acc += a_k * b_k / (c_k * f_k);
    }
    return acc;
}

double trig_dt_center(const HarmonicPressure& p, double young) {
    check_young(young);
    check_pressure(p);
    const double d1 = p.harmonics() >= 1 ? p.dk[0] : 0.0;
    const double e1 = p.harmonics() >= 1 ? p.ek[0] : 0.0;
    return 4.0 * pi * (p.d0 * p.d0 + 2.0 * d1 * d1 + 2.0 * e1 * e1) / young;
}

rv::RandomVector trig_random_vector(int harmonics) {
    if (harmonics < 0)
        throw std::invalid_argument("harmonic disk: harmonic count must be >= 0");
    std::vector<rv::RandomVariable> comps;
    comps.reserve(size_t(2 * harmonics + 3));
    for (int k = 0; k <= harmonics; ++k)
        comps.push_back(rv::RandomVariable::four_param_beta_mean_cv(double(k + 1), 0.1));
    for (int k = 1; k <= harmonics; ++k)
        comps.push_back(rv::RandomVariable::four_param_beta_mean_cv(double(k + 1), 0.1));
    comps.push_back(rv::RandomVariable::four_param_beta_mean_cv(0.2, 0.01));
    comps.push_back(rv::RandomVariable::four_param_beta_mean_cv(1e6, 0.1));
    return rv::RandomVector(std::move(comps));
}

core::Oracle trig_oracle(int harmonics) {
    if (harmonics < 0)
        throw std::invalid_argument("harmonic disk: harmonic count must be >= 0");
    const int n = 2 * harmonics + 3;
    return [harmonics, n](std::span<const double> x) {
        if (int(x.size()) != n)
            throw std::invalid_argument("harmonic response: input dimension mismatch");
        const double nu = x[size_t(2 * harmonics + 1)];
        const double young = x[size_t(2 * harmonics + 2)];
        double acc = 2.0 * x[0] * x[0] * pi * (1.0 - nu);
        for (int k = 1; k <= harmonics; ++k) {
            const double dk = x[size_t(k)], ek = x[size_t(harmonics + k)];
            acc += (dk * dk + ek * ek) * pi * (nu + 2.0 * k + 1.0) /
                   (double(k) * double(k + 2));
        }
        return acc / young;
    };
}

core::Oracle trig_rate_oracle(int harmonics) {
    if (harmonics < 1)
        throw std::invalid_argument("harmonic rate: needs at least one harmonic");
    const int n = 2 * harmonics + 3;
    return [harmonics, n](std::span<const double> x) {
        if (int(x.size()) != n)
            throw std::invalid_argument("harmonic rate: input dimension mismatch");
        const double d0 = x[0], d1 = x[1], e1 = x[size_t(harmonics + 1)];
        return 4.0 * pi * (d0 * d0 + 2.0 * d1 * d1 + 2.0 * e1 * e1) /
               x[size_t(2 * harmonics + 2)];
    };
}

core::Oracle trig_ring_oracle(int harmonics, double rho) {
    if (harmonics < 0)
        throw std::invalid_argument("harmonic disk: harmonic count must be >= 0");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("harmonic disk: hole radius must be in (0, 1)");
    const int n = 2 * harmonics + 3;
    const double r2 = rho * rho;
    // d0^2 (c1 + c2 nu) / E reproduces the hole-in-disk first term.
    const double c1 = 2.0 * pi * (r2 + 1.0) / (1.0 - r2);
    const double c2 = -2.0 * pi;
    // Per harmonic, the radius-dependent factor is linear in nu:
    // term_k = (D_k^2 + E_k^2) (p_k + q_k nu) / E.
    std::vector<double> pk(size_t(harmonics) + 1, 0.0), qk(size_t(harmonics) + 1, 0.0);
    for (int k = 1; k <= harmonics; ++k) {
        const double r2k = std::pow(r2, k);
        const double r2k2 = std::pow(r2, k + 2);
        const double geo = (1.0 - r2k) / (1.0 - r2);
        const double p_part = r2k * (k + 2.0) * (-(3.0 * k + 2.0) - (k + 2.0) * r2) +
                              (-(2.0 * k + 3.0) * r2k2 - (2.0 * k + 1.0)) * geo;
        const double q_part = r2k * (k + 2.0) * k * (1.0 - r2) + (r2k2 - 1.0) * geo;
        const double f_k = double(k) * double(k + 2) * r2k * (1.0 - r2) + (r2k2 - 1.0) * geo;
        const double denom = double(k) * double(k + 2) * f_k;
        pk[size_t(k)] = pi * p_part / denom;
        qk[size_t(k)] = pi * q_part / denom;
    }
    return [harmonics, n, c1, c2, pk, qk](std::span<const double> x) {
        if (int(x.size()) != n)
            throw std::invalid_argument("harmonic ring response: input dimension mismatch");
        const double nu = x[size_t(2 * harmonics + 1)];
        double acc = x[0] * x[0] * (c1 + c2 * nu);
        for (int k = 1; k <= harmonics; ++k) {
            const double dk = x[size_t(k)], ek = x[size_t(harmonics + k)];
            acc += (dk * dk + ek * ek) * (pk[size_t(k)] + qk[size_t(k)] * nu);
        }
        return acc / x[size_t(2 * harmonics + 2)];
    };
}

namespace {

// Monomial in the inputs with at most two distinct factors; the harmonic
// compliance times E and the center rate times E are sums of these.
struct Mono {
    double coeff = 0.0;
    int var[2] = {-1, -1};
    int pow[2] = {0, 0};
    int n = 0;
};

Mono mono1(double c, int v, int p) {
    Mono m;
    m.coeff = c;
    m.var[0] = v;
    m.pow[0] = p;
    m.n = 1;
    return m;
}

Mono mono2(double c, int v0, int p0, int v1, int p1) {
    Mono m;
    m.coeff = c;
    m.var[0] = v0;
    m.pow[0] = p0;
    m.var[1] = v1;
    m.pow[1] = p1;
    m.n = 2;
    return m;
}

struct PowAcc {
    int var[6];
    int pow[6];
    int n = 0;

    void add(const Mono& m) {
        for (int i = 0; i < m.n; ++i) {
            bool merged = false;
            for (int j = 0; j < n; ++j) {
                if (var[j] == m.var[i]) {
                    pow[j] += m.pow[i];
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                var[n] = m.var[i];
                pow[n] = m.pow[i];
                ++n;
            }
        }
    }
};

double product_expectation(const PowAcc& acc, const std::vector<std::array<double, 7>>& mom) {
    double r = 1.0;
    for (int j = 0; j < acc.n; ++j) r *= mom[size_t(acc.var[j])][size_t(acc.pow[j])];
    return r;
}

} // namespace

TrigExactMoments trig_exact_moments(const rv::RandomVector& v, int harmonics) {
    if (harmonics < 1)
        throw std::invalid_argument("harmonic exact moments: needs at least one harmonic");
    const int n = 2 * harmonics + 3;
    if (v.dimension() != n)
        throw std::invalid_argument("harmonic exact moments: variable count disagrees with "
                                    "the harmonic layout");
    const int nu_id = 2 * harmonics + 1;
    const int e_id = 2 * harmonics + 2;

    // Raw moments to the 6th power for every factor that can appear.
    std::vector<std::array<double, 7>> mom(size_t(nu_id) + 1);
    for (int i = 0; i <= nu_id; ++i)
        for (int p = 0; p <= 6; ++p) mom[size_t(i)][size_t(p)] = v[i].raw_moment(p);

    // Numerator polynomial T = y * E as monomials in (D_k, E_k, nu).
    std::vector<Mono> t;
    t.reserve(size_t(2 + 4 * harmonics));
    t.push_back(mono1(2.0 * pi, 0, 2));
    t.push_back(mono2(-2.0 * pi, 0, 2, nu_id, 1));
    for (int k = 1; k <= harmonics; ++k) {
        const double lam = pi / (double(k) * double(k + 2));
        t.push_back(mono1(lam * (2.0 * k + 1.0), k, 2));
        t.push_back(mono1(lam * (2.0 * k + 1.0), harmonics + k, 2));
        t.push_back(mono2(lam, k, 2, nu_id, 1));
        t.push_back(mono2(lam, harmonics + k, 2, nu_id, 1));
    }
    // W = z * E, from the center rate.
    const std::vector<Mono> w = {mono1(4.0 * pi, 0, 2), mono1(8.0 * pi, 1, 2),
                                 mono1(8.0 * pi, harmonics + 1, 2)};

    auto expect1 = [&](const std::vector<Mono>& a) {
        double acc = 0.0;
        for (const auto& ma : a) {
            PowAcc p;
            p.add(ma);
            acc += ma.coeff * product_expectation(p, mom);
        }
        return acc;
    };
    auto expect2 = [&](const std::vector<Mono>& a, const std::vector<Mono>& b) {
        double acc = 0.0;
        for (const auto& ma : a)
            for (const auto& mb : b) {
                PowAcc p;
                p.add(ma);
                p.add(mb);
                acc += ma.coeff * mb.coeff * product_expectation(p, mom);
            }
        return acc;
    };
    auto expect3 = [&](const std::vector<Mono>& a, const std::vector<Mono>& b,
                       const std::vector<Mono>& c) {
        double acc = 0.0;
        for (const auto& ma : a)
            for (const auto& mb : b) {
                PowAcc pab;
                pab.add(ma);
                pab.add(mb);
                const double cab = ma.coeff * mb.coeff;
                for (const auto& mc : c) {
                    PowAcc p = pab;
                    p.add(mc);
                    acc += cab * mc.coeff * product_expectation(p, mom);
                }
            }
        return acc;
    };

    // Inverse-power expectations of E on a dense Gauss rule for its measure.
    const auto rec = ortho::recurrence_for(v[e_id], 60);
    const auto rule = ortho::gauss_from_recurrence(rec, 60);
    double inv[4] = {1.0, 0.0, 0.0, 0.0};
    for (int r = 1; r <= 3; ++r) {
        double acc = 0.0;
        for (int q = 0; q < rule.size(); ++q)
            acc += rule.weights[size_t(q)] * std::pow(rule.nodes[size_t(q)], -r);
        inv[r] = acc;
    }

    TrigExactMoments out;
    out.m1 = expect1(t) * inv[1];
    out.m2 = expect2(t, t) * inv[2];
    out.m3 = expect3(t, t, t) * inv[3];
    out.dt_m1 = expect1(w) * inv[1];
    out.dt_m2 = 2.0 * expect2(t, w) * inv[2];
    out.dt_m3 = 3.0 * expect3(t, t, w) * inv[3];
    return out;
}

} // namespace pdd::bench
