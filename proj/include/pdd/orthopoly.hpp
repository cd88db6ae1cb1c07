#pragma once

#include <span>
#include <vector>

#include "pdd/random_variable.hpp"

namespace pdd::ortho {

// Monic three-term recurrence p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1},
// p_0 = 1, p_{-1} = 0; beta[0] is the measure's total mass (1 here).
struct RecurrenceTable {
    std::vector<double> alpha, beta;

    int order() const { return int(alpha.size()) - 1; }
};

struct QuadratureRule {
    std::vector<double> nodes, weights;

    int size() const { return int(nodes.size()); }
};

// Recurrence coefficients to the given order for v's measure. Uniform and
// four-parameter Beta use the closed-form Jacobi recurrence mapped onto
// [lo, hi]; the other kinds use the Stieltjes procedure on a 20-panel
// 10-point composite Gauss-Legendre discretization of the measure.
RecurrenceTable recurrence_for(const rv::RandomVariable& v, int order);

// Golub-Welsch: eigen-decomposition of the symmetric tridiagonal Jacobi
// matrix built from the recurrence. Needs alpha[0..n-1], beta[0..n-1].
QuadratureRule gauss_from_recurrence(const RecurrenceTable& rec, int n);

// Polynomials orthonormal under v's measure, degrees 0..m, with their
// Gauss rules and the table of triple-product expectations E[psi_a psi_b psi_c].
class OrthonormalBasis {
public:
    static OrthonormalBasis build(const rv::RandomVariable& v, int m);

    int max_degree() const { return m_; }
    const rv::RandomVariable& variable() const { return v_; }
    const RecurrenceTable& recurrence() const { return rec_; }

    double eval(int j, double x) const;
    // psi_0(x) .. psi_m(x); out.size() must be m+1.
    void eval_all(double x, std::span<double> out) const;

    QuadratureRule gauss_rule(int n) const;

    // E[psi_j1 psi_j2 psi_j3]; table-backed, symmetric bit-exactly, and
    // exactly zero when one degree exceeds the sum of the other two.
    double triple_product(int j1, int j2, int j3) const;

    // Flat view of the (m+1)^3 triple-product table, index
    // ((j1*(m+1))+j2)*(m+1)+j3, for inner loops that avoid call overhead.
    std::span<const double> triple_table() const { return tri_; }

private:
    rv::RandomVariable v_ = rv::RandomVariable::uniform(0.0, 1.0);
    int m_ = 0;
    RecurrenceTable rec_;
    std::vector<double> sqrt_beta_;
    std::vector<double> tri_;  // (m+1)^3, index ((a*(m+1))+b)*(m+1)+c
};

} // namespace pdd::ortho
