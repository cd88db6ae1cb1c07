#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace pdd::topo {

enum class ElasticCase { plane_stress, plane_strain, three_d };

struct ElasticConstants {
    double young = 1.0;
    double poisson = 0.0;

    ElasticConstants(double young_modulus, double poisson_ratio);

    double shear() const { return young / (2.0 * (1.0 + poisson)); }
    double bulk() const { return young / (3.0 * (1.0 - 2.0 * poisson)); }
};

// Symmetric 2x2 or 3x3 stress tensor; only the upper triangle is stored,
// so symmetry cannot drift.
class SymStress {
public:
    static SymStress plane(double s11, double s22, double s12);
    static SymStress solid(double s11, double s22, double s33, double s12, double s13,
                           double s23);
    static SymStress hydrostatic(int dim, double p);

    int dimension() const { return dim_; }
    double operator()(int i, int j) const;
    double trace() const;
    // Full double contraction including both off-diagonal mirror copies.
    double contract(const SymStress& o) const;
    // Traction n . sigma; entries beyond the dimension are zero.
    std::array<double, 3> normal_traction(std::span<const double> n) const;

private:
    SymStress() = default;
    int dim_ = 2;
    std::array<double, 6> c_{}; // 2D: s11 s22 s12; 3D: s11 s22 s33 s12 s13 s23
};

// A vanishing circular (n=2) or spherical (n=3) perforation at a point.
struct PerforationSpec {
    std::vector<double> center;
    double rho = 0.05;
    int spatial_dim = 2;
};
void validate(const PerforationSpec& p);

struct EshelbyConstants {
    double a = 0.0;
    double b = 0.0;
};

// The response amplification induced by a vanishing perforation is the
// bilinear form k1 (adjoint : direct) + k2 tr(adjoint) tr(direct); these
// are its two coefficients for the given elastic case.
struct AmplificationCoefficients {
    double k1 = 0.0;
    double k2 = 0.0;
};

AmplificationCoefficients amplification_coefficients(ElasticCase c, const ElasticConstants& el);

// Pointwise topology derivative of a compliance-type response from the
// direct and adjoint stresses at the perforation center.
double amplification_contract(ElasticCase c, const ElasticConstants& el,
                              const SymStress& adjoint, const SymStress& direct);

EshelbyConstants eshelby_constants(const ElasticConstants& el);

// Displacement on the boundary of a small traction-free cavity of radius
// rho in a medium under far-field stress sigma, at the point with outward
// unit normal n.
std::array<double, 3> external_displacement(ElasticCase c, const ElasticConstants& el,
                                            const SymStress& sigma, std::span<const double> n,
                                            double rho);

// Finite-difference probe of the defining limit dt = lim (y_ring(rho) -
// y_disk)/rho^n on a geometric rho sequence. The leading remainder of the
// quotient is quadratic in rho, so halving rho should shrink the residual
// by about 4.
struct RingCheckReport {
    std::vector<double> rho;
    std::vector<double> quotient; // (y_ring(rho) - y_disk) / rho^n
    double dt_value = 0.0;
    double observed_rate = 0.0; // exponent of the residual decay in rho
    bool converged = false;
};

RingCheckReport asymptotic_ring_check(double y_disk, const std::function<double(double)>& y_ring,
                                      double dt_value, int spatial_dim);

} // namespace pdd::topo
