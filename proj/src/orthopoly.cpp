#include "pdd/orthopoly.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "pdd/quadrature.hpp"

namespace pdd::ortho {

namespace {

// Monic Jacobi recurrence for the weight (1-t)^a (1+t)^b on [-1, 1]
// (Gautschi's r_jacobi), then affinely mapped to [lo, hi] and normalized
// to unit mass. Beta(alpha, beta) on [lo, hi] corresponds to a = beta-1,
// b = alpha-1 (the Beta density's (x-lo) exponent pairs with (1+t)).
RecurrenceTable jacobi_recurrence(double a, double b, double lo, double hi, int order) {
    RecurrenceTable rec;
    rec.alpha.resize(size_t(order) + 1);
    rec.beta.resize(size_t(order) + 1);
    rec.alpha[0] = (b - a) / (a + b + 2.0);
    rec.beta[0] = 1.0;
    for (int n = 1; n <= order; ++n) {
        double nab = 2.0 * n + a + b;
        rec.alpha[size_t(n)] = (b * b - a * a) / (nab * (nab + 2.0));
        if (n == 1)
            rec.beta[1] = 4.0 * (a + 1.0) * (b + 1.0) /
                          ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
        else
            rec.beta[size_t(n)] = 4.0 * n * (n + a) * (n + b) * (n + a + b) /
                                  (nab * nab * (nab + 1.0) * (nab - 1.0));
    }
    double c0 = 0.5 * (lo + hi), c1 = 0.5 * (hi - lo);
    for (int n = 0; n <= order; ++n) {
        rec.alpha[size_t(n)] = c0 + c1 * rec.alpha[size_t(n)];
        if (n >= 1) rec.beta[size_t(n)] *= c1 * c1;
    }
    return rec;
}

// Discretized Stieltjes: orthogonalize against a quadrature approximation
// of the measure. The discrete weights are renormalized so beta[0] = 1.
RecurrenceTable stieltjes_recurrence(const rv::RandomVariable& v, int order) {
    constexpr int kPanels = 20, kPerPanel = 10;
    std::vector<double> gx, gw;
    quad::gauss_legendre(kPerPanel, gx, gw);

    const double lo = v.lower(), hi = v.upper();
    const int npts = kPanels * kPerPanel;
    std::vector<double> t(size_t(npts), 0.0), w(size_t(npts), 0.0);
    double mass = 0.0;
    for (int p = 0; p < kPanels; ++p) {
        double a = lo + (hi - lo) * p / kPanels;
        double b = lo + (hi - lo) * (p + 1) / kPanels;
        for (int i = 0; i < kPerPanel; ++i) {
            size_t idx = size_t(p * kPerPanel + i);
            t[idx] = 0.5 * (a + b) + 0.5 * (b - a) * gx[size_t(i)];
            w[idx] = 0.5 * (b - a) * gw[size_t(i)] * v.pdf(t[idx]);
            mass += w[idx];
        }
    }
    for (auto& wi : w) wi /= mass;

    RecurrenceTable rec;
    rec.alpha.assign(size_t(order) + 1, 0.0);
    rec.beta.assign(size_t(order) + 1, 0.0);
    rec.beta[0] = 1.0;

    std::vector<double> p_prev(size_t(npts), 0.0), p_cur(size_t(npts), 1.0);
    double nrm_cur = 1.0;
    double a0 = 0.0;
    for (int i = 0; i < npts; ++i) a0 += w[size_t(i)] * t[size_t(i)];
    rec.alpha[0] = a0;

    for (int k = 0; k < order; ++k) {
        double nrm_next = 0.0, at_next = 0.0;
        std::vector<double> p_next(size_t(npts), 0.0);
        for (int i = 0; i < npts; ++i) {
            double val = (t[size_t(i)] - rec.alpha[size_t(k)]) * p_cur[size_t(i)] -
                         (k > 0 ? rec.beta[size_t(k)] : 0.0) * p_prev[size_t(i)];
            p_next[size_t(i)] = val;
            nrm_next += w[size_t(i)] * val * val;
            at_next += w[size_t(i)] * t[size_t(i)] * val * val;
        }
        double beta_next = nrm_next / nrm_cur;
        if (!(beta_next > 0.0) || !std::isfinite(beta_next))
            throw std::runtime_error("stieltjes recurrence breakdown at order " +
                                     std::to_string(k + 1));
        rec.beta[size_t(k + 1)] = beta_next;
        rec.alpha[size_t(k + 1)] = at_next / nrm_next;
        p_prev.swap(p_cur);
        p_cur.swap(p_next);
        nrm_cur = nrm_next;
    }
    return rec;
}

} // namespace

RecurrenceTable recurrence_for(const rv::RandomVariable& v, int order) {
    if (order < 0) throw std::invalid_argument("recurrence_for: order must be >= 0");
    switch (v.kind()) {
        case rv::Kind::uniform:
            return jacobi_recurrence(0.0, 0.0, v.lower(), v.upper(), order);
        case rv::Kind::four_param_beta: {
            auto p = v.params();
            return jacobi_recurrence(p[1] - 1.0, p[0] - 1.0, v.lower(), v.upper(), order);
        }
        case rv::Kind::inverse_uniform:
        case rv::Kind::truncated_gaussian:
            return stieltjes_recurrence(v, order);
    }
    throw std::logic_error("recurrence_for: bad enum");
}

QuadratureRule gauss_from_recurrence(const RecurrenceTable& rec, int n) {
    if (n < 1) throw std::invalid_argument("gauss_from_recurrence: n must be >= 1");
    if (rec.order() < n - 1)
        throw std::invalid_argument("gauss_from_recurrence: recurrence shorter than rule");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag[i] = rec.alpha[size_t(i)];
    for (int i = 1; i < n; ++i) {
        double b = rec.beta[size_t(i)];
        if (!(b > 0.0))
            throw std::runtime_error("gauss_from_recurrence: nonpositive beta at index " +
                                     std::to_string(i));
        sub[i - 1] = std::sqrt(b);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_from_recurrence: eigensolver failed at order " +
                                 std::to_string(n));
    QuadratureRule rule;
    rule.nodes.resize(size_t(n));
    rule.weights.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        rule.nodes[size_t(i)] = es.eigenvalues()[i];
        double v0 = es.eigenvectors()(0, i);
        rule.weights[size_t(i)] = rec.beta[0] * v0 * v0;
    }
    return rule;
}

OrthonormalBasis OrthonormalBasis::build(const rv::RandomVariable& v, int m) {
    if (m < 1) throw std::invalid_argument("OrthonormalBasis: m must be >= 1");
    OrthonormalBasis b;
    b.v_ = v;
    b.m_ = m;
    // Triple products need a rule with 2n-1 >= 3m; keep recurrence depth
    // generous so gauss_rule(n) rarely recomputes.
    const int tri_nodes = (3 * m) / 2 + 2;
    b.rec_ = recurrence_for(v, std::max(m + 8, tri_nodes));
    b.sqrt_beta_.resize(size_t(m) + 1);
    for (int k = 0; k <= m; ++k) b.sqrt_beta_[size_t(k)] = std::sqrt(b.rec_.beta[size_t(k)]);

    QuadratureRule rule = gauss_from_recurrence(b.rec_, tri_nodes);
    const int w = m + 1;
    b.tri_.assign(size_t(w) * size_t(w) * size_t(w), 0.0);
    std::vector<double> psi(size_t(w), 0.0);
    for (int q = 0; q < rule.size(); ++q) {
        b.eval_all(rule.nodes[size_t(q)], psi);
        double wq = rule.weights[size_t(q)];
        for (int a = 0; a <= m; ++a)
            for (int bb = a; bb <= m; ++bb)
                for (int c = bb; c <= m; ++c)
                    b.tri_[size_t((a * w + bb) * w + c)] += wq * psi[size_t(a)] *
                                                            psi[size_t(bb)] * psi[size_t(c)];
    }
    // Zero by the degree argument (a <= b <= c stored; product of degrees
    // a+b < c has exact expectation 0) and mirror to all index orders.
    for (int a = 0; a <= m; ++a)
        for (int bb = a; bb <= m; ++bb)
            for (int c = bb; c <= m; ++c) {
                double val = (c > a + bb) ? 0.0 : b.tri_[size_t((a * w + bb) * w + c)];
                int idx[3] = {a, bb, c};
                int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                for (auto& p : perms)
                    b.tri_[size_t((idx[p[0]] * w + idx[p[1]]) * w + idx[p[2]])] = val;
            }
    return b;
}

double OrthonormalBasis::eval(int j, double x) const {
    if (j < 0 || j > m_) throw std::invalid_argument("eval: degree out of range");
    std::vector<double> out(size_t(m_) + 1);
    eval_all(x, out);
    return out[size_t(j)];
}

void OrthonormalBasis::eval_all(double x, std::span<double> out) const {
    // Orthonormal recurrence: sqrt(b_{k+1}) psi_{k+1} = (x-a_k) psi_k - sqrt(b_k) psi_{k-1}.
    out[0] = 1.0;
    if (m_ >= 1) out[1] = (x - rec_.alpha[0]) / sqrt_beta_[1];
    for (int k = 1; k < m_; ++k)
        out[size_t(k) + 1] = ((x - rec_.alpha[size_t(k)]) * out[size_t(k)] -
                              sqrt_beta_[size_t(k)] * out[size_t(k) - 1]) /
                             sqrt_beta_[size_t(k) + 1];
}

QuadratureRule OrthonormalBasis::gauss_rule(int n) const {
    if (rec_.order() >= n - 1) return gauss_from_recurrence(rec_, n);
    return gauss_from_recurrence(recurrence_for(v_, n), n);
}

double OrthonormalBasis::triple_product(int j1, int j2, int j3) const {
    if (j1 < 0 || j2 < 0 || j3 < 0 || j1 > m_ || j2 > m_ || j3 > m_)
        throw std::invalid_argument("triple_product: degree out of range");
    const int w = m_ + 1;
    return tri_[size_t((j1 * w + j2) * w + j3)];
}

} // namespace pdd::ortho
