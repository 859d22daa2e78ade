#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dbx/linalg.hpp"
#include "dbx/poly.hpp"
#include "dbx/symanzik.hpp"

namespace dbx {

// The 28-dimensional space of quadrics in 7 variables; basis monomials in the
// canonical term order shared with serialization.
class QuadricSpace {
public:
    static constexpr int kDim = 28;
    QuadricSpace();
    const std::vector<ExpVec>& monomials() const { return monomials_; }
    int index_of(const ExpVec& e) const;
    // q must be homogeneous of degree 2 (or zero) in 7 variables.
    std::vector<Rat> to_vector(const SparsePoly& q) const;
    SparsePoly from_vector(const std::vector<Rat>& v) const;
    // Span of the monomials x_i x_j with both i and j in `block` (0-based).
    std::vector<std::vector<Rat>> monomial_block_span(
        const std::vector<int>& block) const;

private:
    std::vector<ExpVec> monomials_;
    std::map<ExpVec, int, GradedLexLess> index_;
};

// Exact linear-algebra certificate: pass iff computed == claimed; the witness
// polynomials span the computed space.
struct CertificateResult {
    std::string name;
    int claimed = 0;
    int computed = 0;
    bool pass = false;
    std::vector<SparsePoly> witness;
};

// Quadrics vanishing to order 2 on both conics C and C': the intersection of
// the (x1..x4)^2 and (x4..x7)^2 monomial blocks. Claimed dimension 1 with
// basis x4^2; instance-independent, exact.
CertificateResult order2_vanishing_quadrics();

// Symmetric coefficient matrix of a quadric restricted to a variable block.
RatMatrix gram_matrix(const SparsePoly& q, const std::vector<int>& block);

// Gram ranks of Q and Q', claimed 3 each (smooth conics). Rank 3 makes the
// map sending the last-block coordinate derivations to the linear forms
// dQ/dx_j injective, and mirror-wise for Q'. Requires last_block labeling.
std::vector<CertificateResult> conic_gram_certificates(
    const SymanzikDecomposition& d);

enum class Side { c, cprime };

// Span certificate for the seven generator quadrics attached to one conic:
// for side c these are dPsi/dx4..dPsi/dx7 and (dQ'/dx_i)*(x4+x5+x6+x7),
// i = 1..3; for side cprime the mirror set dPsi/dx1..dPsi/dx4 and
// (dQ/dx_j)*(x1+x2+x3+x4). Returns (span-dimension certificate, claimed 7;
// intersection with the opposite 10-dimensional monomial block, claimed 0).
// Requires last_block labeling and zero residual.
std::pair<CertificateResult, CertificateResult> derivative_span_certificate(
    const SymanzikDecomposition& d, Side side);

// Exact partition of a quadric's coefficients by block class: keys first_sq,
// first_last, middle_last, last_sq, remainder (blocks: first = x1..x3,
// middle = x4, last = x5..x7). The parts sum to the input.
std::map<std::string, SparsePoly> monomial_class_split(const SparsePoly& q);

}  // namespace dbx
