#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pdd/orthopoly.hpp"
#include "pdd/random_variable.hpp"

namespace pdd::core {

// One expansion term: the interacting variables u (0-based, strictly
// ascending) and their polynomial degrees j (same length, each in 1..m).
struct MultiIndexTerm {
    std::vector<int> vars;
    std::vector<int> degs;

    bool operator==(const MultiIndexTerm&) const = default;
};

// All terms with 1 <= |u| <= max_order variables out of n and degrees
// 1..max_degree, in canonical order: by |u|, then u lexicographically,
// then j lexicographically. Size is sum_{s=1..max_order} C(n,s) m^s.
std::vector<MultiIndexTerm> index_set(int n, int max_order, int max_degree);

// Per-variable orthonormal bases for a random vector, shared between the
// surrogates built on it. Equality is structural (same variables, same
// degree), so surrogates deserialized separately still compare compatible.
class BasisSet {
public:
    static std::shared_ptr<const BasisSet> build(const rv::RandomVector& v, int max_degree);

    int dimension() const { return int(bases_.size()); }
    int max_degree() const { return m_; }
    const rv::RandomVector& variables() const { return v_; }
    const ortho::OrthonormalBasis& basis(int i) const { return bases_[size_t(i)]; }

    bool structurally_equal(const BasisSet& o) const;

private:
    rv::RandomVector v_;
    int m_ = 0;
    std::vector<ortho::OrthonormalBasis> bases_;
};

// Truncated expansion y(x) ~ y0 + sum_k coeff[k] * prod_i psi_{deg_i}(x_i),
// with terms in canonical index_set order. Also carries how it was built:
// the dimensional-refinement order r, the reference point, and the number
// of distinct oracle points the construction used.
class PddSurrogate {
public:
    PddSurrogate(std::shared_ptr<const BasisSet> bases, int max_order, int max_degree,
                 double constant, std::vector<double> coeffs, int refine_order,
                 std::vector<double> reference, long long oracle_points);

    int dimension() const { return bases_->dimension(); }
    int max_order() const { return max_order_; }       // S
    int max_degree() const { return max_degree_; }     // m
    int refine_order() const { return refine_order_; } // R used by the builder

    double constant() const { return constant_; }
    std::span<const double> coeffs() const { return coeffs_; }
    std::span<const MultiIndexTerm> terms() const { return terms_; }
    std::span<const double> reference() const { return reference_; }
    long long oracle_points() const { return oracle_points_; }

    const BasisSet& bases() const { return *bases_; }
    std::shared_ptr<const BasisSet> bases_ptr() const { return bases_; }

    // Same variables, same S and m: coefficient vectors are aligned.
    bool compatible_with(const PddSurrogate& o) const;

    double eval(std::span<const double> x) const;

    std::string to_json() const;
    static PddSurrogate from_json(const std::string& text);

private:
    std::shared_ptr<const BasisSet> bases_;
    int max_order_ = 1;
    int max_degree_ = 1;
    int refine_order_ = 1;
    double constant_ = 0.0;
    std::vector<MultiIndexTerm> terms_;
    std::vector<double> coeffs_;
    std::vector<double> reference_;
    long long oracle_points_ = 0;
};

// Evaluates a surrogate on blocks of samples. Precomputes a structure-of-
// arrays layout of the per-variable polynomial tables so the per-sample
// inner loops run over contiguous memory.
class BatchEvaluator {
public:
    static constexpr int block = 64;

    explicit BatchEvaluator(const PddSurrogate& s);

    // xs holds count points of dimension n, sample-major; count <= block.
    // Writes count surrogate values to out.
    void eval_block(std::span<const double> xs, int count, std::span<double> out);

private:
    struct UniEntry {
        int table_offset;
        double coeff;
    };
    struct PairEntry {
        int offset1, offset2; // degree-1 table offsets of the two variables
        std::vector<double> w; // m x m coefficient block, degrees 1..m
    };
    struct GeneralEntry {
        std::vector<int> offsets;
        double coeff;
    };

    const PddSurrogate* s_;
    int n_ = 0, m_ = 0;
    std::vector<double> rec_alpha_;   // n*(m+1) flattened recurrence data
    std::vector<double> rec_beta_;
    std::vector<double> rec_sqrtb_;
    std::vector<double> table_;       // n*(m+1)*block psi values
    std::vector<UniEntry> singles_;
    std::vector<PairEntry> pairs_;
    std::vector<GeneralEntry> general_;
};

} // namespace pdd::core
