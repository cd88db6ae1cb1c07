#include "pdd/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace pdd::core {

namespace {

long long index_set_size(int n, int max_order, int max_degree) {
    long long total = 0, c = 1, mpow = 1;
    for (int s = 1; s <= max_order; ++s) {
        c = c * (n - s + 1) / s; // exact: every prefix is itself a binomial
        mpow *= max_degree;
        total += c * mpow;
    }
    return total;
}

} // namespace

std::vector<MultiIndexTerm> index_set(int n, int max_order, int max_degree) {
    if (n < 1) throw std::invalid_argument("index_set: dimension must be >= 1");
    if (max_order < 1 || max_order > n)
        throw std::invalid_argument("index_set: interaction order must be in 1..dimension");
    if (max_degree < 1) throw std::invalid_argument("index_set: degree must be >= 1");

    std::vector<MultiIndexTerm> out;
    out.reserve(size_t(index_set_size(n, max_order, max_degree)));
    std::vector<int> u, j;
    for (int s = 1; s <= max_order; ++s) {
        u.resize(size_t(s));
        for (int p = 0; p < s; ++p) u[size_t(p)] = p;
        while (true) {
            j.assign(size_t(s), 1);
            while (true) {
                out.push_back({u, j});
                int p = s - 1;
                while (p >= 0 && j[size_t(p)] == max_degree) { j[size_t(p)] = 1; --p; }
                if (p < 0) break;
                ++j[size_t(p)];
            }
            int p = s - 1;
            while (p >= 0 && u[size_t(p)] == n - s + p) --p;
            if (p < 0) break;
            ++u[size_t(p)];
            for (int q = p + 1; q < s; ++q) u[size_t(q)] = u[size_t(q - 1)] + 1;
        }
    }
    return out;
}

std::shared_ptr<const BasisSet> BasisSet::build(const rv::RandomVector& v, int max_degree) {
    if (v.dimension() < 1)
        throw std::invalid_argument("basis set: needs at least one variable");
    if (max_degree < 1) throw std::invalid_argument("basis set: degree must be >= 1");
    auto bs = std::make_shared<BasisSet>();
    bs->v_ = v;
    bs->m_ = max_degree;
    bs->bases_.reserve(size_t(v.dimension()));
    for (int i = 0; i < v.dimension(); ++i)
        bs->bases_.push_back(ortho::OrthonormalBasis::build(v[i], max_degree));
    return bs;
}

bool BasisSet::structurally_equal(const BasisSet& o) const {
    return m_ == o.m_ && v_ == o.v_;
}

PddSurrogate::PddSurrogate(std::shared_ptr<const BasisSet> bases, int max_order, int max_degree,
                           double constant, std::vector<double> coeffs, int refine_order,
                           std::vector<double> reference, long long oracle_points)
    : bases_(std::move(bases)),
      max_order_(max_order),
      max_degree_(max_degree),
      refine_order_(refine_order),
      constant_(constant),
      coeffs_(std::move(coeffs)),
      reference_(std::move(reference)),
      oracle_points_(oracle_points) {
    if (!bases_) throw std::invalid_argument("surrogate: null basis set");
    const int n = bases_->dimension();
    if (max_order_ < 1 || max_order_ > n)
        throw std::invalid_argument("surrogate: interaction order must be in 1..dimension");
    if (max_degree_ < 1 || max_degree_ > bases_->max_degree())
        throw std::invalid_argument("surrogate: degree exceeds the basis degree");
    if (refine_order_ < max_order_ || refine_order_ > n)
        throw std::invalid_argument(
            "surrogate: refinement order must be in interaction_order..dimension");
    if (int(reference_.size()) != n)
        throw std::invalid_argument("surrogate: reference point dimension mismatch");
    if (oracle_points_ < 0)
        throw std::invalid_argument("surrogate: negative oracle point count");
    terms_ = index_set(n, max_order_, max_degree_);
    if (coeffs_.size() != terms_.size())
        throw std::invalid_argument("surrogate: coefficient count does not match the index set");
}

bool PddSurrogate::compatible_with(const PddSurrogate& o) const {
    return max_order_ == o.max_order_ && max_degree_ == o.max_degree_ &&
           bases_->structurally_equal(*o.bases_);
}

double PddSurrogate::eval(std::span<const double> x) const {
    const int n = dimension();
    if (int(x.size()) != n) throw std::invalid_argument("surrogate eval: dimension mismatch");
    const int w = max_degree_ + 1;
    std::vector<double> psi(size_t(n) * size_t(w));
    for (int i = 0; i < n; ++i)
        bases_->basis(i).eval_all(x[size_t(i)], {&psi[size_t(i) * size_t(w)], size_t(w)});
    double acc = constant_;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        const double c = coeffs_[k];
        if (c == 0.0) continue;
        const auto& t = terms_[k];
        double prod = c;
        for (size_t p = 0; p < t.vars.size(); ++p)
            prod *= psi[size_t(t.vars[p]) * size_t(w) + size_t(t.degs[p])];
        acc += prod;
    }
    return acc;
}

std::string PddSurrogate::to_json() const {
    nlohmann::json j;
    j["dimension"] = dimension();
    j["max_order"] = max_order_;
    j["max_degree"] = max_degree_;
    j["refine_order"] = refine_order_;
    j["constant"] = constant_;
    j["reference"] = reference_;
    j["oracle_points"] = oracle_points_;
    auto vars = nlohmann::json::array();
    for (const auto& v : bases_->variables().components()) {
        nlohmann::json jv;
        jv["kind"] = std::string(rv::kind_name(v.kind()));
        jv["params"] = std::vector<double>(v.params().begin(), v.params().end());
        vars.push_back(std::move(jv));
    }
    j["variables"] = std::move(vars);
    auto terms = nlohmann::json::array();
    for (size_t k = 0; k < terms_.size(); ++k) {
        nlohmann::json jt;
        auto u = terms_[k].vars;
        for (int& e : u) ++e; // variables are 1-based in the file format
        jt["u"] = std::move(u);
        jt["j"] = terms_[k].degs;
        jt["coeff"] = coeffs_[k];
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j.dump(2);
}

PddSurrogate PddSurrogate::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("dimension").get<int>();
    const int max_order = j.at("max_order").get<int>();
    const int max_degree = j.at("max_degree").get<int>();

    std::vector<rv::RandomVariable> comps;
    for (const auto& jv : j.at("variables")) {
        const auto kind = rv::kind_from_name(jv.at("kind").get<std::string>());
        const auto params = jv.at("params").get<std::vector<double>>();
        comps.push_back(rv::RandomVariable::from_params(kind, params));
    }
    if (int(comps.size()) != n)
        throw std::invalid_argument("surrogate json: variable list disagrees with dimension");
    auto bases = BasisSet::build(rv::RandomVector(std::move(comps)), max_degree);

    const auto canonical = index_set(n, max_order, max_degree);
    std::map<std::pair<std::vector<int>, std::vector<int>>, size_t> slot;
    for (size_t k = 0; k < canonical.size(); ++k)
        slot[{canonical[k].vars, canonical[k].degs}] = k;

    std::vector<double> coeffs(canonical.size(), 0.0);
    std::vector<char> seen(canonical.size(), 0);
    for (const auto& jt : j.at("terms")) {
        auto u = jt.at("u").get<std::vector<int>>();
        for (int& e : u) --e;
        const auto deg = jt.at("j").get<std::vector<int>>();
        const auto it = slot.find({u, deg});
        if (it == slot.end())
            throw std::invalid_argument("surrogate json: term outside the index set");
        if (seen[it->second])
            throw std::invalid_argument("surrogate json: duplicate term");
        seen[it->second] = 1;
        coeffs[it->second] = jt.at("coeff").get<double>();
    }

    return PddSurrogate(std::move(bases), max_order, max_degree,
                        j.at("constant").get<double>(), std::move(coeffs),
                        j.value("refine_order", max_order),
                        j.at("reference").get<std::vector<double>>(),
                        j.value("oracle_points", 0LL));
}

BatchEvaluator::BatchEvaluator(const PddSurrogate& s) : s_(&s) {
    n_ = s.dimension();
    m_ = s.max_degree();
    const int w = m_ + 1;
    rec_alpha_.assign(size_t(n_) * size_t(w), 0.0);
    rec_beta_.assign(size_t(n_) * size_t(w), 0.0);
    rec_sqrtb_.assign(size_t(n_) * size_t(w), 1.0);
    for (int i = 0; i < n_; ++i) {
        const auto& rec = s.bases().basis(i).recurrence();
        for (int k = 0; k < w; ++k) {
            rec_alpha_[size_t(i) * size_t(w) + size_t(k)] = rec.alpha[size_t(k)];
            rec_beta_[size_t(i) * size_t(w) + size_t(k)] = rec.beta[size_t(k)];
            rec_sqrtb_[size_t(i) * size_t(w) + size_t(k)] = std::sqrt(rec.beta[size_t(k)]);
        }
    }
    table_.assign(size_t(n_) * size_t(w) * size_t(block), 0.0);

    std::map<std::pair<int, int>, size_t> pair_slot;
    const auto terms = s.terms();
    const auto coeffs = s.coeffs();
    for (size_t k = 0; k < terms.size(); ++k) {
        const auto& t = terms[k];
        const double c = coeffs[k];
        if (t.vars.size() == 1) {
            if (c != 0.0)
                singles_.push_back({t.vars[0] * w + t.degs[0], c});
        } else if (t.vars.size() == 2) {
            const std::pair<int, int> key{t.vars[0], t.vars[1]};
            auto it = pair_slot.find(key);
            if (it == pair_slot.end()) {
                it = pair_slot.emplace(key, pairs_.size()).first;
                pairs_.push_back({t.vars[0] * w, t.vars[1] * w,
                                  std::vector<double>(size_t(m_) * size_t(m_), 0.0)});
            }
            pairs_[it->second].w[size_t(t.degs[0] - 1) * size_t(m_) + size_t(t.degs[1] - 1)] = c;
        } else {
            if (c != 0.0) {
                GeneralEntry g;
                g.coeff = c;
                for (size_t p = 0; p < t.vars.size(); ++p)
                    g.offsets.push_back(t.vars[p] * w + t.degs[p]);
                general_.push_back(std::move(g));
            }
        }
    }
    std::erase_if(pairs_, [](const PairEntry& p) {
        return std::all_of(p.w.begin(), p.w.end(), [](double c) { return c == 0.0; });
    });
}

void BatchEvaluator::eval_block(std::span<const double> xs, int count, std::span<double> out) {
    if (count < 1 || count > block)
        throw std::invalid_argument("batch eval: count must be in 1..block");
    if (xs.size() < size_t(count) * size_t(n_))
        throw std::invalid_argument("batch eval: sample buffer too small");
    if (out.size() < size_t(count))
        throw std::invalid_argument("batch eval: output buffer too small");

    const int w = m_ + 1;
    for (int i = 0; i < n_; ++i) {
        const double* al = &rec_alpha_[size_t(i) * size_t(w)];
        const double* sb = &rec_sqrtb_[size_t(i) * size_t(w)];
        double* t = &table_[size_t(i) * size_t(w) * size_t(block)];
        for (int s = 0; s < count; ++s) {
            const double x = xs[size_t(s) * size_t(n_) + size_t(i)];
            double pm1 = 0.0, p0 = 1.0;
            t[s] = 1.0;
            for (int deg = 1; deg <= m_; ++deg) {
                const double p1 = ((x - al[deg - 1]) * p0 - sb[deg - 1] * pm1) / sb[deg];
                t[size_t(deg) * size_t(block) + size_t(s)] = p1;
                pm1 = p0;
                p0 = p1;
            }
        }
    }

    double acc[block];
    const double y0 = s_->constant();
    for (int s = 0; s < count; ++s) acc[s] = y0;

    for (const auto& e : singles_) {
        const double* t = &table_[size_t(e.table_offset) * size_t(block)];
        const double c = e.coeff;
        for (int s = 0; s < count; ++s) acc[s] += c * t[s];
    }
    for (const auto& p : pairs_) {
        for (int j1 = 1; j1 <= m_; ++j1) {
            const double* r1 = &table_[size_t(p.offset1 + j1) * size_t(block)];
            const double* row = &p.w[size_t(j1 - 1) * size_t(m_)];
            for (int j2 = 1; j2 <= m_; ++j2) {
                const double c = row[j2 - 1];
                if (c == 0.0) continue;
                const double* r2 = &table_[size_t(p.offset2 + j2) * size_t(block)];
                for (int s = 0; s < count; ++s) acc[s] += c * r1[s] * r2[s];
            }
        }
    }
    for (const auto& g : general_) {
        for (int s = 0; s < count; ++s) {
            double prod = g.coeff;
            for (const int off : g.offsets) prod *= table_[size_t(off) * size_t(block) + size_t(s)];
            acc[s] += prod;
        }
    }
    for (int s = 0; s < count; ++s) out[s] = acc[s];
}

} // namespace pdd::core
