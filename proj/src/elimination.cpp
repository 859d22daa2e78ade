// Independent cross-check solver for the isolated singular points of the
// double-box cubic.  Instead of the structured per-line reduction used by
// solve_isolated_singularities, this route eliminates variables with Sylvester
// resultants, finds univariate roots as companion-matrix eigenvalues, and
// back-substitutes, polishing each candidate with a damped Newton iteration on
// the in-chart square system.  The two routes share no solving code, so
// agreement of their point sets is a meaningful consistency check.
//
// Working space: on the singular locus x4 = 0 and the gradient conditions
// force x1+x2+x3 = 0 and x5+x6+x7 = 0, so candidate points live in a
// 4-dimensional space with coordinates w = (w0,w1,w2,w3) identified with
// (x1,x2,x5,x6) via
//   x = (w0, w1, -w0-w1, 0, w2, w3, -w2-w3).
// The remaining equations are g1 = Q'(x1,x2,x3), g2 = Q(x5,x6,x7) and the
// bilinear form g3 = A(x) pulled back to w.  Chart A fixes w0 = 1 and chart B
// fixes w2 = 1; together they cover every solution (w = 0 is not projective).
// Because the solutions are double points of the system, the eliminant's
// roots carry multiplicity and the raw eigenvalues are only
// machine-eps^(1/mult) accurate; the Newton polish recovers full precision.

#include "dbx/singular.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dbx {

namespace {

// Pull a univariate polynomial's exact coefficients (constant term first).
// Throws if the polynomial involves any variable other than `var`.
std::vector<Rat> univariate_coeffs(const SparsePoly& p, int var) {
    std::vector<Rat> coeffs(static_cast<size_t>(std::max(p.degree_in(var), 0)) + 1,
                            Rat(0));
    for (const auto& [e, c] : p.terms()) {
        for (int v = 0; v < p.nvars(); ++v)
            if (v != var && e[v] != 0)
                throw std::invalid_argument(
                    "univariate_coeffs: polynomial is not univariate in the "
                    "requested variable");
        coeffs[static_cast<size_t>(e[var])] += c;
    }
    return coeffs;
}

// Complex roots of an exact-coefficient univariate polynomial via the
// eigenvalues of its companion matrix.  An identically zero polynomial has no
// isolated roots and yields the empty set.
std::vector<Cplx> univariate_roots(const SparsePoly& p, int var) {
    std::vector<Rat> coeffs = univariate_coeffs(p, var);
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};  // constant (possibly zero): no roots

    int deg = static_cast<int>(coeffs.size()) - 1;
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(to_double(c)));
    std::vector<double> cd(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) cd[i] = to_double(coeffs[i]) / scale;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        companion(i, deg - 1) = -cd[static_cast<size_t>(i)] / cd[static_cast<size_t>(deg)];
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    std::vector<Cplx> roots;
    roots.reserve(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

// Roots of a2 t^2 + a1 t + a0 with complex coefficients (affine; roots at
// infinity are dropped).
std::vector<Cplx> quadratic_roots_affine(Cplx a2, Cplx a1, Cplx a0) {
    double s = std::abs(a2) + std::abs(a1) + std::abs(a0);
    if (s == 0.0) return {};
    auto tiny = [s](Cplx z) { return std::abs(z) <= 1e-14 * s; };
    if (tiny(a2)) {
        if (tiny(a1)) return {};
        return {-a0 / a1};
    }
    Cplx disc = a1 * a1 - 4.0 * a2 * a0;
    Cplx sq = std::sqrt(disc);
    Cplx q = (std::real(std::conj(a1) * sq) >= 0.0) ? -(a1 + sq) / 2.0
                                                    : -(a1 - sq) / 2.0;
    if (std::abs(q) > 0.0) return {q / a2, a0 / q};
    return {Cplx(0.0, 0.0), Cplx(0.0, 0.0)};
}

Cplx eval_at(const SparsePoly& p, const std::vector<Cplx>& x) {
    return p.eval_complex(x);
}

// Evaluate the coefficient of var^k in p, with the other variables set from x.
Cplx partial_coeff(const SparsePoly& p, int var, int k, const std::vector<Cplx>& x) {
    return eval_at(p.coefficient_of_power(var, k), x);
}

// Residual scaled by the coefficient mass at the working magnitude, so that a
// candidate sitting near a high-order zero of p is not judged against a
// collapsing per-term scale.
double hybrid_residual(const SparsePoly& p, const std::vector<Cplx>& x) {
    double m = 1.0;
    for (const Cplx& c : x) m = std::max(m, std::abs(c));
    Cplx acc(0.0, 0.0);
    double scale = 0.0;
    for (const auto& [e, c] : p.terms()) {
        double ac = std::abs(to_double(c));
        Cplx t(to_double(c), 0.0);
        double mag = ac;
        for (int v = 0; v < p.nvars(); ++v)
            for (int kk = 0; kk < e[v]; ++kk) { t *= x[v]; mag *= m; }
        acc += t;
        scale += mag;
    }
    if (scale == 0.0) return 0.0;
    return std::abs(acc) / scale;
}

struct ChartSystem {
    std::array<SparsePoly, 3> f;   // in-chart equations
    std::array<int, 3> unknown{};  // free w-indices
    std::vector<SparsePoly> dj;    // row-major: dj[3*i+j] = d f_i / d w_unknown[j]
};

double worst_residual(const ChartSystem& cs, const std::vector<Cplx>& x) {
    double worst = 0.0;
    for (const auto& p : cs.f) worst = std::max(worst, hybrid_residual(p, x));
    return worst;
}

// Damped Newton on the square 3x3 in-chart system.  The target points are
// double roots, so convergence is linear rather than quadratic; the iteration
// budget easily recovers ~1e-12 placement from ~1e-4 starts.
void newton_polish(const ChartSystem& cs, std::vector<Cplx>& x) {
    double best = worst_residual(cs, x);
    for (int it = 0; it < 60 && best > 1e-15; ++it) {
        Eigen::Vector3cd F;
        Eigen::Matrix3cd J;
        for (int i = 0; i < 3; ++i) {
            F(i) = eval_at(cs.f[static_cast<size_t>(i)], x);
            for (int j = 0; j < 3; ++j)
                J(i, j) = eval_at(cs.dj[static_cast<size_t>(3 * i + j)], x);
        }
        Eigen::Vector3cd step = J.completeOrthogonalDecomposition().solve(-F);
        bool improved = false;
        for (double damp = 1.0; damp > 1.0 / 256.0; damp /= 2.0) {
            std::vector<Cplx> trial = x;
            for (int j = 0; j < 3; ++j)
                trial[static_cast<size_t>(cs.unknown[static_cast<size_t>(j)])] +=
                    damp * step(j);
            double r = worst_residual(cs, trial);
            if (r < best) {
                x = trial;
                best = r;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
}

struct ReducedSystem {
    SparsePoly g1, g2, g3;  // in 4 variables w0..w3
};

// Substitute x -> (w0, w1, -w0-w1, 0, w2, w3, -w2-w3) into the three
// defining polynomials.
ReducedSystem reduce_to_w(const SymanzikDecomposition& d) {
    const int nw = 4;
    auto w = [nw](int i) { return SparsePoly::variable(nw, i); };
    std::vector<SparsePoly> forms = {
        w(0), w(1), SparsePoly::constant(nw, Rat(0)) - w(0) - w(1),
        SparsePoly::constant(nw, Rat(0)),
        w(2), w(3), SparsePoly::constant(nw, Rat(0)) - w(2) - w(3)};
    return {d.Qprime.substitute(forms), d.Q.substitute(forms),
            d.a_poly().substitute(forms)};
}

// Solve one chart: `fixed` is the w-index pinned to 1.
void solve_chart(const ReducedSystem& sys, int fixed,
                 std::vector<std::array<Cplx, 7>>& found) {
    const int nw = 4;
    std::vector<SparsePoly> pin;
    pin.reserve(nw);
    for (int i = 0; i < nw; ++i)
        pin.push_back(i == fixed ? SparsePoly::constant(nw, Rat(1))
                                 : SparsePoly::variable(nw, i));
    SparsePoly f1 = sys.g1.substitute(pin);  // involves w0,w1 only
    SparsePoly f2 = sys.g2.substitute(pin);  // involves w2,w3 only
    SparsePoly f3 = sys.g3.substitute(pin);

    // Variable roles per chart: with w0 pinned, eliminate w3 (via f3,f2) then
    // w1 (via the eliminant and f1) and sweep w2; mirrored when w2 is pinned.
    int elim1, elim2, sweep, quad;
    if (fixed == 0) {
        elim1 = 3; elim2 = 1; sweep = 2; quad = 1;
    } else {
        elim1 = 1; elim2 = 3; sweep = 0; quad = 3;
    }
    const SparsePoly& pair_a = (fixed == 0) ? f2 : f1;  // shares elim1 with f3
    const SparsePoly& pair_b = (fixed == 0) ? f1 : f2;  // univariate in quad

    SparsePoly r1 = sylvester_resultant(f3, pair_a, elim1);
    SparsePoly r2 = sylvester_resultant(r1, pair_b, elim2);  // univariate in sweep

    ChartSystem cs{{f1, f2, f3}, {}, {}};
    {
        int k = 0;
        for (int i = 0; i < nw; ++i)
            if (i != fixed) cs.unknown[static_cast<size_t>(k++)] = i;
        cs.dj.reserve(9);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                cs.dj.push_back(cs.f[i].derivative(cs.unknown[j]));
    }

    for (Cplx root : univariate_roots(r2, sweep)) {
        std::vector<Cplx> base(static_cast<size_t>(nw), Cplx(0.0, 0.0));
        base[static_cast<size_t>(fixed)] = Cplx(1.0, 0.0);
        base[static_cast<size_t>(sweep)] = root;
        std::vector<Cplx> quad_candidates =
            quadratic_roots_affine(partial_coeff(pair_b, quad, 2, base),
                                   partial_coeff(pair_b, quad, 1, base),
                                   partial_coeff(pair_b, quad, 0, base));
        for (Cplx qv : quad_candidates) {
            std::vector<Cplx> x = base;
            x[static_cast<size_t>(quad)] = qv;
            // Last unknown from f3, linear in elim1 once the rest is fixed;
            // fall back to the block quadratic if the linear coefficient
            // degenerates.
            Cplx lin = partial_coeff(f3, elim1, 1, x);
            Cplx con = partial_coeff(f3, elim1, 0, x);
            std::vector<Cplx> last_candidates;
            double lscale = std::abs(lin) + std::abs(con);
            if (lscale > 0.0 && std::abs(lin) > 1e-10 * lscale) {
                last_candidates.push_back(-con / lin);
            } else {
                last_candidates =
                    quadratic_roots_affine(partial_coeff(pair_a, elim1, 2, x),
                                           partial_coeff(pair_a, elim1, 1, x),
                                           partial_coeff(pair_a, elim1, 0, x));
            }
            for (Cplx lv : last_candidates) {
                std::vector<Cplx> wpt = x;
                wpt[static_cast<size_t>(elim1)] = lv;
                newton_polish(cs, wpt);
                if (worst_residual(cs, wpt) > 1e-7) continue;  // spurious combo
                std::array<Cplx, 7> pt = {
                    wpt[0], wpt[1], -wpt[0] - wpt[1], Cplx(0.0, 0.0),
                    wpt[2], wpt[3], -wpt[2] - wpt[3]};
                normalize_projective(pt);
                found.push_back(pt);
            }
        }
    }
}

}  // namespace

std::vector<std::array<Cplx, 7>> solve_by_elimination(
    const SymanzikDecomposition& d, double tol) {
    if (d.m != 3 || d.n != 3)
        throw std::invalid_argument(
            "solve_by_elimination: requires a (3,1,3) decomposition");
    if (d.labeling != Labeling::last_block)
        throw std::invalid_argument(
            "solve_by_elimination: requires last_block labeling");

    ReducedSystem sys = reduce_to_w(d);
    std::vector<std::array<Cplx, 7>> raw;
    solve_chart(sys, /*fixed=*/0, raw);
    solve_chart(sys, /*fixed=*/2, raw);

    // Deduplicate projectively.  Polished points are placed far more
    // accurately than the merge radius, and genuinely distinct solutions of a
    // generic instance are O(1) apart.
    std::vector<std::array<Cplx, 7>> distinct;
    double merge = std::max(10.0 * tol, 1e-7);
    for (const auto& p : raw) {
        bool dup = false;
        for (const auto& q : distinct)
            if (projective_separation(p, q) <= merge) { dup = true; break; }
        if (!dup) distinct.push_back(p);
    }
    return distinct;
}

}  // namespace dbx
