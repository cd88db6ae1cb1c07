#pragma once

#include "pdd/surrogate.hpp"

namespace pdd::moments {

// First three raw moments of a surrogate, exact in its coefficients.
struct MomentReport {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double variance = 0.0; // m2 - m1^2, computed as the coefficient square sum
    int max_order = 0;     // truncation the surrogate was built with
    int max_degree = 0;
};

// Rates of change of the first three raw moments when the domain acquires
// an infinitesimal perforation, given the paired surrogates of the response
// and of its perturbation rate.
struct MomentSensitivityReport {
    double dt_m1 = 0.0;
    double dt_m2 = 0.0;
    double dt_m3 = 0.0;
};

double mean(const core::PddSurrogate& s);
double second_moment(const core::PddSurrogate& s);
double third_moment(const core::PddSurrogate& s);
MomentReport compute_moments(const core::PddSurrogate& s);

double dt_mean(const core::PddSurrogate& rate);
// 2 [ y0 z0 + sum_k C_k D_k ]; y and rate must share variables and truncation.
double dt_second_moment(const core::PddSurrogate& y, const core::PddSurrogate& rate);
// 3 [ z0 m2(y) + 2 y0 sum_k C_k D_k + E[(y - y0)^2 (z - z0)] ].
double dt_third_moment(const core::PddSurrogate& y, const core::PddSurrogate& rate);
MomentSensitivityReport compute_sensitivities(const core::PddSurrogate& y,
                                              const core::PddSurrogate& rate);

// E[(a - a0)(b - b0)(c - c0)]: the full triple sum over expansion terms,
// coeff_a coeff_b coeff_c times the product over involved dimensions of
// univariate triple products. A term triple contributes only when the
// symmetric difference of the first two variable sets is contained in the
// third and the third is contained in their union, so the sum walks, for
// every pair of term groups, just the realizable third groups.
double interaction_triple_sum(const core::PddSurrogate& a, const core::PddSurrogate& b,
                              const core::PddSurrogate& c);

} // namespace pdd::moments
