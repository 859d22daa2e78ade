#include "dbx/certificates.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbx {

namespace {

constexpr int kVars = 7;

void require_last_block(const SymanzikDecomposition& d, const char* who) {
    if (d.m != 3 || d.n != 3)
        throw std::invalid_argument(std::string(who) + ": requires a (3,1,3) decomposition");
    if (d.labeling != Labeling::last_block)
        throw std::invalid_argument(std::string(who) + ": requires last_block labeling");
}

}  // namespace

QuadricSpace::QuadricSpace() {
    for (int i = 0; i < kVars; ++i)
        for (int j = i; j < kVars; ++j) {
            ExpVec e(kVars, 0);
            e[i] += 1;
            e[j] += 1;
            monomials_.push_back(e);
        }
    std::sort(monomials_.begin(), monomials_.end(), GradedLexLess{});
    for (size_t k = 0; k < monomials_.size(); ++k)
        index_[monomials_[k]] = static_cast<int>(k);
}

int QuadricSpace::index_of(const ExpVec& e) const {
    auto it = index_.find(e);
    if (it == index_.end())
        throw std::invalid_argument("QuadricSpace::index_of: not a degree-2 monomial");
    return it->second;
}

std::vector<Rat> QuadricSpace::to_vector(const SparsePoly& q) const {
    if (q.nvars() != kVars)
        throw std::invalid_argument("QuadricSpace::to_vector: expected 7 variables");
    std::vector<Rat> v(kDim, Rat(0));
    for (const auto& [e, c] : q.terms()) {
        if (exp_degree(e) != 2)
            throw std::invalid_argument("QuadricSpace::to_vector: not a quadric");
        v[index_of(e)] = c;
    }
    return v;
}

SparsePoly QuadricSpace::from_vector(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != kDim)
        throw std::invalid_argument("QuadricSpace::from_vector: expected length 28");
    SparsePoly q(kVars);
    for (int k = 0; k < kDim; ++k)
        if (v[k] != 0) q.add_term(monomials_[k], v[k]);
    return q;
}

std::vector<std::vector<Rat>> QuadricSpace::monomial_block_span(
    const std::vector<int>& block) const {
    std::vector<std::vector<Rat>> span;
    for (size_t a = 0; a < block.size(); ++a)
        for (size_t b = a; b < block.size(); ++b) {
            ExpVec e(kVars, 0);
            e[block[a]] += 1;
            e[block[b]] += 1;
            std::vector<Rat> v(kDim, Rat(0));
            v[index_of(e)] = 1;
            span.push_back(std::move(v));
        }
    return span;
}

CertificateResult order2_vanishing_quadrics() {
    QuadricSpace space;
    auto meet = subspace_intersection(space.monomial_block_span({0, 1, 2, 3}),
                                      space.monomial_block_span({3, 4, 5, 6}));
    CertificateResult r;
    r.name = "order2-vanishing-quadrics";
    r.claimed = 1;
    r.computed = static_cast<int>(meet.size());
    for (const auto& v : meet) r.witness.push_back(space.from_vector(v));
    // Pass requires the basis to be exactly x4^2, not just dimension 1.
    ExpVec x4sq(kVars, 0);
    x4sq[3] = 2;
    r.pass = r.computed == r.claimed &&
             r.witness[0] == SparsePoly::monomial(kVars, x4sq, Rat(1));
    return r;
}

RatMatrix gram_matrix(const SparsePoly& q, const std::vector<int>& block) {
    int k = static_cast<int>(block.size());
    RatMatrix g(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            ExpVec e(q.nvars(), 0);
            e[block[a]] += 1;
            e[block[b]] += 1;
            Rat c = q.coefficient_of(e);
            g.at(a, b) = (a == b) ? c : c / 2;
        }
    return g;
}

std::vector<CertificateResult> conic_gram_certificates(
    const SymanzikDecomposition& d) {
    require_last_block(d, "conic_gram_certificates");
    std::vector<CertificateResult> out;
    auto one = [&](const char* name, const SparsePoly& q,
                   const std::vector<int>& block) {
        CertificateResult r;
        r.name = name;
        r.claimed = 3;
        r.computed = gram_matrix(q, block).rank();
        r.pass = r.computed == r.claimed;
        r.witness.push_back(q);
        out.push_back(std::move(r));
    };
    one("conic-gram-rank-q", d.Q, d.q_block());
    one("conic-gram-rank-qprime", d.Qprime, d.qprime_block());
    return out;
}

std::pair<CertificateResult, CertificateResult> derivative_span_certificate(
    const SymanzikDecomposition& d, Side side) {
    require_last_block(d, "derivative_span_certificate");
    if (!d.residual.is_zero())
        throw std::invalid_argument("derivative_span_certificate: nonzero residual");
    SparsePoly psi = d.reconstruct();
    QuadricSpace space;
    std::vector<SparsePoly> gens;
    std::vector<int> avoid_block;
    if (side == Side::c) {
        // Normal directions of C: gradient components 4..7 plus the Q' row
        // scaled by the complementary linear form x4+x5+x6+x7.
        for (int v = 3; v < kVars; ++v) gens.push_back(psi.derivative(v));
        SparsePoly s(kVars);
        for (int v = 3; v < kVars; ++v) s = s + SparsePoly::variable(kVars, v);
        for (int v = 0; v < 3; ++v) gens.push_back(d.Qprime.derivative(v) * s);
        avoid_block = {0, 1, 2, 3};
    } else {
        for (int v = 0; v <= 3; ++v) gens.push_back(psi.derivative(v));
        SparsePoly s(kVars);
        for (int v = 0; v <= 3; ++v) s = s + SparsePoly::variable(kVars, v);
        for (int v = 4; v < kVars; ++v) gens.push_back(d.Q.derivative(v) * s);
        avoid_block = {3, 4, 5, 6};
    }
    std::vector<std::vector<Rat>> span;
    for (const auto& g : gens) span.push_back(space.to_vector(g));
    const char* tag = (side == Side::c) ? "" : "-mirror";
    CertificateResult dim;
    dim.name = std::string("derivative-span-dimension") + tag;
    dim.claimed = 7;
    dim.computed = rank_of_span(span);
    dim.pass = dim.computed == dim.claimed;
    dim.witness = gens;
    CertificateResult meet;
    meet.name = std::string("derivative-span-block-intersection") + tag;
    meet.claimed = 0;
    auto basis = subspace_intersection(span, space.monomial_block_span(avoid_block));
    meet.computed = static_cast<int>(basis.size());
    meet.pass = meet.computed == meet.claimed;
    for (const auto& v : basis) meet.witness.push_back(space.from_vector(v));
    return {dim, meet};
}

std::map<std::string, SparsePoly> monomial_class_split(const SparsePoly& q) {
    if (q.nvars() != kVars)
        throw std::invalid_argument("monomial_class_split: expected 7 variables");
    std::map<std::string, SparsePoly> out{
        {"first_sq", SparsePoly(kVars)},   {"first_last", SparsePoly(kVars)},
        {"middle_last", SparsePoly(kVars)}, {"last_sq", SparsePoly(kVars)},
        {"remainder", SparsePoly(kVars)},
    };
    auto block_of = [](int v) { return v < 3 ? 0 : (v == 3 ? 1 : 2); };
    for (const auto& [e, c] : q.terms()) {
        if (exp_degree(e) != 2)
            throw std::invalid_argument("monomial_class_split: not a quadric");
        int i = -1, j = -1;
        for (int v = 0; v < kVars; ++v) {
            if (e[v] == 2) { i = j = v; }
            else if (e[v] == 1) { (i < 0 ? i : j) = v; }
        }
        int bi = block_of(i), bj = block_of(j);
        std::string cls = "remainder";
        if (bi == 0 && bj == 0) cls = "first_sq";
        else if (bi == 0 && bj == 2) cls = "first_last";
        else if (bi == 1 && bj == 2) cls = "middle_last";
        else if (bi == 2 && bj == 2) cls = "last_sq";
        out[cls].add_term(e, c);
    }
    return out;
}

}  // namespace dbx
