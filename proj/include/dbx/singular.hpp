#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dbx/symanzik.hpp"

namespace dbx {

using Cplx = std::complex<double>;

// All residuals in this module are relative: |value| divided by the sum of
// the absolute values of the evaluated terms, so the tolerance is meaningful
// regardless of coefficient scale.

struct SingularPoint {
    std::array<Cplx, 7> coords{};  // largest-magnitude coordinate is 1; x4 exactly 0
    double residual_psi = 0.0;
    double residual_grad = 0.0;
    double initial_residual_grad = 0.0;  // before Newton refinement
    int hessian_rank = -1;
    bool is_odp = false;
    int chart_index = -1;  // coordinate normalized to 1
    int line_index = -1;   // which of the 4 reduction lines produced it
    bool on_conic = false;  // lies on C (x1..x4 ~ 0) or C' (x4..x7 ~ 0)
};

struct SolveReport {
    std::vector<SingularPoint> points;  // up to 8, multiplicity-counted
    int distinct_count = 0;
    double min_pairwise_separation = 0.0;  // chordal metric over all pairs
    bool degenerate_discriminant = false;  // some reduction quadratic had a double root
    double tol = 0.0;
};

struct ConicCertificate {
    bool pass = false;
    std::string witness;  // failing restriction, when any
};

// Exact certificate that every point of the conics C and C' is singular on
// {Psi = 0}: each gradient component restricted to x1=..=x4=0 must be a
// rational multiple of Q (on x5,x6,x7), and restricted to x4=..=x7=0 a
// multiple of Q'. Requires last_block labeling and zero residual.
ConicCertificate verify_conic_singularity(const SparsePoly& psi,
                                          const SymanzikDecomposition& d);

// Solve for the isolated singular points via the structured reduction: the
// linear constraints x4 = x1+x2+x3 = x5+x6+x7 = 0 turn Q and Q' into binary
// quadratics whose root ratios define 4 lines in P^3; on each line A = 0 is a
// binary quadratic giving 2 points. Points are refined against the full
// 7-variable gradient system (Gauss-Newton in the chart, x4 pinned to exact
// 0) and embedded with x3 = -x1-x2, x7 = -x5-x6.
SolveReport solve_isolated_singularities(const SymanzikDecomposition& d,
                                         double tol);

// Dehomogenizes in the chart of p, computes the 6x6 Hessian of the affine
// cubic, and reports its numerical rank (singular values above rank_tol
// relative to the largest). is_odp iff the rank is 6.
SingularPoint classify_point(const SparsePoly& psi, const SingularPoint& p,
                             double rank_tol);

// Chordal distance between projective points (0 for equal, up to sqrt(2)).
double projective_separation(const std::array<Cplx, 7>& p,
                             const std::array<Cplx, 7>& q);

// Scale so the largest-magnitude coordinate is exactly 1 (exact zeros are
// preserved); returns the index of that coordinate.
int normalize_projective(std::array<Cplx, 7>& coords);

struct DiagnosticEntry {
    std::string name;
    bool pass = false;
    std::string value;
};

struct GenericityReport {
    uint64_t seed = 0;
    int gram_rank_q = -1;
    int gram_rank_qprime = -1;
    int s_point_count = 0;  // distinct solutions found
    bool all_odp = false;
    double min_pairwise_separation = 0.0;
    bool disjoint_from_conics = false;
    bool overall_pass = false;
    std::vector<DiagnosticEntry> diagnostics;
    SolveReport solve;
};

// Full diagnostic panel for a (3,1,3) instance: decomposition residual, Gram
// ranks, conic certificate, reduction degeneracies, and the isolated-point
// expectations (8 distinct, all ordinary double points, off the conics,
// residuals below tol). Failures are data, not errors.
GenericityReport genericity_report(const TwoLoopGraph& g,
                                   const KinematicData& kin, double tol = 1e-9);

// Independent solver for the same reduced system by resultant elimination:
// exact Sylvester resultants down to one univariate polynomial per chart,
// roots via companion-matrix eigenvalues, then back-substitution and residual
// filtering. Returns deduplicated projective points.
std::vector<std::array<Cplx, 7>> solve_by_elimination(
    const SymanzikDecomposition& d, double tol);

// True iff both point sets match pairwise within `tol` in the chordal metric.
bool point_sets_match(const std::vector<std::array<Cplx, 7>>& a,
                      const std::vector<std::array<Cplx, 7>>& b, double tol);

}  // namespace dbx
