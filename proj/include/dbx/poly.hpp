#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "dbx/rational.hpp"

namespace dbx {

// Exponent vector of a monomial; entry k is the power of variable k (0-based).
using ExpVec = std::vector<int>;

inline int exp_degree(const ExpVec& e) {
    int d = 0;
    for (int k : e) d += k;
    return d;
}

// Canonical term order: ascending total degree, ties broken so that the
// lexicographically larger exponent vector comes first (x1^2 before x1*x2
// before x2^2). This order is shared by serialization, printing, and the
// quadric coefficient space.
struct GradedLexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        int da = exp_degree(a), db = exp_degree(b);
        if (da != db) return da < db;
        return a > b;  // lexicographically larger vector sorts first
    }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Immutable in spirit: arithmetic returns new values; no zero terms stored.
class SparsePoly {
public:
    using Terms = std::map<ExpVec, Rat, GradedLexLess>;

    explicit SparsePoly(int nvars = 0);

    static SparsePoly constant(int nvars, const Rat& c);
    static SparsePoly variable(int nvars, int var);
    static SparsePoly monomial(int nvars, const ExpVec& exp, const Rat& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int num_terms() const { return static_cast<int>(terms_.size()); }
    const Terms& terms() const { return terms_; }

    int total_degree() const;  // -1 for the zero polynomial
    bool is_homogeneous() const;
    bool is_multilinear() const;  // no variable to a power >= 2
    int degree_in(int var) const;

    Rat coefficient_of(const ExpVec& exp) const;
    // Polynomial coefficient of var^k (a polynomial in the same variable
    // space, with zero exponent on var).
    SparsePoly coefficient_of_power(int var, int k) const;

    SparsePoly& add_term(const ExpVec& exp, const Rat& c);

    SparsePoly operator-() const;
    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly operator*(const Rat& c) const;
    bool operator==(const SparsePoly& o) const;
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

    SparsePoly derivative(int var) const;

    // Composition p(f_0, ..., f_{nvars-1}). All forms must share a common
    // variable space, which becomes the result's.
    SparsePoly substitute(const std::vector<SparsePoly>& forms) const;
    SparsePoly set_vars_to_zero(const std::vector<int>& vars) const;
    // Exact division by a single variable; throws if any term lacks it.
    SparsePoly divide_by_variable(int var) const;

    // Same polynomial viewed in a larger variable space (appends variables).
    SparsePoly padded(int nvars) const;

    Rat eval_rat(const std::vector<Rat>& x) const;
    std::complex<double> eval_complex(
        const std::vector<std::complex<double>>& x) const;

    // Human-readable form with variables named x1, x2, ...
    std::string to_string() const;

private:
    int nvars_;
    Terms terms_;
};

inline SparsePoly operator*(const Rat& c, const SparsePoly& p) { return p * c; }

// Determinant of a square matrix of polynomials by cofactor expansion.
SparsePoly poly_determinant(const std::vector<std::vector<SparsePoly>>& m);

// Sylvester resultant of p and q with respect to one variable, eliminating it.
// Degrees are taken in `var`; the result does not involve `var`.
SparsePoly sylvester_resultant(const SparsePoly& p, const SparsePoly& q,
                               int var);

}  // namespace dbx
