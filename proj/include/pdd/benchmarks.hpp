#pragma once

#include <vector>

#include "pdd/random_variable.hpp"
#include "pdd/rdd.hpp"

namespace pdd::bench {

// ---- Uniformly pressurized disk (plane stress, unit radius) ----
// Random inputs: E ~ InverseUniform[2,4], p0 ~ Uniform[1,2]; nu fixed.

double disk_compliance(double young, double p0, double nu);
// Same disk with a concentric traction-free hole of radius rho (0 <= rho < 1).
double disk_ring_compliance(double young, double p0, double nu, double rho);
// Topology derivative of the compliance for a center perforation.
double disk_dt_center(double young, double p0);
// Exact density of the compliance under the benchmark distributions.
double disk_pdf_compliance(double y, double nu);

// Variables in oracle-argument order [E, p0].
rv::RandomVector disk_random_vector();
core::Oracle disk_oracle(double nu);
core::Oracle disk_rate_oracle(); // z = dt at the center; nu-independent
core::Oracle disk_ring_oracle(double nu, double rho);

// Closed-form reference values for the disk benchmark. The reliability
// forms hold for thresholds on the upper branch of the compliance density,
// 2 pi (1-nu) < ybar < 4 pi (1-nu).
struct DiskReferenceValues {
    double nu = 0.2;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    double dt_m1 = 0.0, dt_m2 = 0.0, dt_m3 = 0.0;

    double failure_probability(double ybar) const; // P[y > ybar]
    double dt_failure_probability(double ybar) const;
    bool threshold_in_window(double ybar) const;
};
DiskReferenceValues disk_reference_values(double nu);

// ---- Disk under a K-harmonic pressure (plane stress, unit radius) ----
// Random inputs in order [D_0 .. D_K, E_1 .. E_K, nu, E], all four-
// parameter Beta(4,4) on mean +- 3 sigma: D_k, E_k with mean k+1 and
// cv 0.1; nu with mean 0.2 and cv 0.01; E with mean 1e6 and cv 0.1.

struct HarmonicPressure {
    double d0 = 0.0;
    std::vector<double> dk; // k = 1..K
    std::vector<double> ek; // k = 1..K

    int harmonics() const { return int(dk.size()); }
};

double trig_compliance(const HarmonicPressure& p, double young, double nu);
// Perforated-disk counterpart; valid for 0 < rho < 1.
double trig_ring_compliance(const HarmonicPressure& p, double young, double nu, double rho);
// Topology derivative at the center; only D0, D1, E1 enter.
double trig_dt_center(const HarmonicPressure& p, double young);

rv::RandomVector trig_random_vector(int harmonics);
core::Oracle trig_oracle(int harmonics);
core::Oracle trig_rate_oracle(int harmonics);
// Perforated response at a fixed radius, with the per-harmonic radius
// constants folded so per-sample cost stays linear in K.
core::Oracle trig_ring_oracle(int harmonics, double rho);

// Exact moments and their perforation sensitivities for the harmonic
// benchmark, by expanding E[(y E)^r] into monomial expectations (the
// numerator polynomial is independent of E) and integrating E^{-r} with a
// high-order Gauss rule. Exact up to quadrature on the single E factor.
struct TrigExactMoments {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    double dt_m1 = 0.0, dt_m2 = 0.0, dt_m3 = 0.0;
};
TrigExactMoments trig_exact_moments(const rv::RandomVector& v, int harmonics);

} // namespace pdd::bench
