#include "dbx/singular.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "dbx/certificates.hpp"

namespace dbx {

namespace {

constexpr int kVars = 7;
constexpr int kMiddle = 3;  // 0-based index of x4

void require_solver_input(const SymanzikDecomposition& d, const char* who) {
    if (d.m != 3 || d.n != 3)
        throw std::invalid_argument(std::string(who) + ": requires a (3,1,3) decomposition");
    if (d.labeling != Labeling::last_block)
        throw std::invalid_argument(std::string(who) + ": requires last_block labeling");
}

std::vector<Cplx> to_vec(const std::array<Cplx, 7>& p) {
    return std::vector<Cplx>(p.begin(), p.end());
}

// Evaluate with a backward-error scale: (value, sum of |term| magnitudes).
std::pair<Cplx, double> eval_scaled(const SparsePoly& poly,
                                    const std::vector<Cplx>& x) {
    Cplx acc(0.0, 0.0);
    double scale = 0.0;
    for (const auto& [e, c] : poly.terms()) {
        Cplx t(to_double(c), 0.0);
        for (int v = 0; v < poly.nvars(); ++v)
            for (int k = 0; k < e[v]; ++k) t *= x[v];
        acc += t;
        scale += std::abs(t);
    }
    return {acc, scale};
}

double relative_residual(const SparsePoly& poly, const std::vector<Cplx>& x) {
    auto [v, scale] = eval_scaled(poly, x);
    if (scale == 0.0) return 0.0;
    return std::abs(v) / scale;
}

// Residual scaled by the coefficient mass at the working magnitude
// max(1, |x|_inf).  Unlike the per-point term scale above, this does not
// collapse when the point sits near a high-order zero of the polynomial, so
// it is the right yardstick for constraints that vanish to second order on
// the solution set (the block quadrics at points with one block zero).
double anchored_residual(const SparsePoly& poly, const std::vector<Cplx>& x) {
    double m = 1.0;
    for (const Cplx& c : x) m = std::max(m, std::abs(c));
    Cplx acc(0.0, 0.0);
    double scale = 0.0;
    for (const auto& [e, c] : poly.terms()) {
        Cplx t(to_double(c), 0.0);
        double mag = std::abs(to_double(c));
        for (int v = 0; v < poly.nvars(); ++v)
            for (int k = 0; k < e[v]; ++k) { t *= x[v]; mag *= m; }
        acc += t;
        scale += mag;
    }
    if (scale == 0.0) return 0.0;
    return std::abs(acc) / scale;
}

// One projective root (c1 : c2) of a binary quadratic, with exactness of the
// structurally zero component preserved.
struct RootPair {
    Cplx c1, c2;
};

struct BinQuadRoots {
    std::vector<RootPair> roots;  // 0 or 2 entries
    bool degenerate = false;      // double root, or identically zero
};

RootPair normalized(Cplx c1, Cplx c2) {
    if (std::abs(c1) >= std::abs(c2)) return {Cplx(1.0, 0.0), c2 / c1};
    return {c1 / c2, Cplx(1.0, 0.0)};
}

// Roots of a s^2 + b s t + c t^2 = 0 in P^1. `zero` decides coefficient
// vanishing (exact for rational input, thresholded for numeric input).
template <typename Coef, typename IsZero>
BinQuadRoots binary_quadratic_roots_impl(const Coef& a, const Coef& b,
                                         const Coef& c, IsZero zero,
                                         auto to_cplx) {
    BinQuadRoots out;
    bool za = zero(a), zb = zero(b), zc = zero(c);
    if (za && zb && zc) {
        out.degenerate = true;  // identically zero: the whole line
        return out;
    }
    if (za && zc) {  // b s t = 0
        out.roots = {{Cplx(1.0, 0.0), Cplx(0.0, 0.0)},
                     {Cplx(0.0, 0.0), Cplx(1.0, 0.0)}};
        return out;
    }
    if (za) {  // t (b s + c t) = 0
        if (zb) {  // c t^2 = 0: double root at t = 0
            out.degenerate = true;
            out.roots = {{Cplx(1.0, 0.0), Cplx(0.0, 0.0)},
                         {Cplx(1.0, 0.0), Cplx(0.0, 0.0)}};
            return out;
        }
        out.roots = {{Cplx(1.0, 0.0), Cplx(0.0, 0.0)},
                     normalized(-to_cplx(c), to_cplx(b))};
        return out;
    }
    if (zc) {  // s (a s + b t) = 0
        if (zb) {
            out.degenerate = true;
            out.roots = {{Cplx(0.0, 0.0), Cplx(1.0, 0.0)},
                         {Cplx(0.0, 0.0), Cplx(1.0, 0.0)}};
            return out;
        }
        out.roots = {{Cplx(0.0, 0.0), Cplx(1.0, 0.0)},
                     normalized(-to_cplx(b), to_cplx(a))};
        return out;
    }
    Cplx ac = to_cplx(a), bc = to_cplx(b), cc = to_cplx(c);
    Cplx disc = bc * bc - 4.0 * ac * cc;
    double disc_scale = std::abs(bc) * std::abs(bc) + 4.0 * std::abs(ac) * std::abs(cc);
    if (std::abs(disc) <= 1e-12 * disc_scale) out.degenerate = true;
    Cplx sq = std::sqrt(disc);
    // Pick the sign avoiding cancellation; the other root via Vieta.
    Cplx q = (std::real(std::conj(bc) * sq) >= 0.0) ? -(bc + sq) / 2.0
                                                    : -(bc - sq) / 2.0;
    out.roots = {normalized(q, ac), normalized(cc, q)};
    return out;
}

BinQuadRoots binary_quadratic_roots(const Rat& a, const Rat& b, const Rat& c) {
    return binary_quadratic_roots_impl(
        a, b, c, [](const Rat& r) { return r == 0; },
        [](const Rat& r) { return Cplx(to_double(r), 0.0); });
}

BinQuadRoots binary_quadratic_roots(Cplx a, Cplx b, Cplx c) {
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    double eps = 1e-13 * scale;
    return binary_quadratic_roots_impl(
        a, b, c, [eps](Cplx z) { return std::abs(z) <= eps; },
        [](Cplx z) { return z; });
}

// Is p a rational multiple of q (including 0 * q)?
bool is_rational_multiple(const SparsePoly& p, const SparsePoly& q) {
    if (p.is_zero()) return true;
    if (q.is_zero()) return false;
    const auto& [lead_exp, lead_coeff] = *q.terms().begin();
    Rat lambda = p.coefficient_of(lead_exp) / lead_coeff;
    return p == q * lambda;
}

int argmax_abs(const std::array<Cplx, 7>& p) {
    int best = 0;
    double best_abs = -1.0;
    for (int i = 0; i < kVars; ++i) {
        double a = std::abs(p[i]);
        if (a > best_abs) { best = i; best_abs = a; }
    }
    return best;
}

int normalize_point(std::array<Cplx, 7>& p) {
    int chart = argmax_abs(p);
    Cplx z = p[chart];
    if (std::abs(z) == 0.0)
        throw std::domain_error("cannot normalize the zero vector as a projective point");
    for (int i = 0; i < kVars; ++i)
        if (p[i] != Cplx(0.0, 0.0)) p[i] /= z;  // exact zeros stay exact
    p[chart] = Cplx(1.0, 0.0);
    return chart;
}

double max_grad_residual(const std::vector<SparsePoly>& grads,
                         const std::vector<Cplx>& x) {
    double worst = 0.0;
    for (const auto& g : grads)
        worst = std::max(worst, relative_residual(g, x));
    return worst;
}

// Gauss-Newton against the 7-component gradient system in the chart of p;
// x4 and the chart coordinate are held fixed.
void newton_refine(const std::vector<SparsePoly>& grads,
                   const std::vector<std::vector<SparsePoly>>& hess,
                   std::array<Cplx, 7>& p, int chart) {
    std::vector<int> free_vars;
    for (int v = 0; v < kVars; ++v)
        if (v != chart && v != kMiddle) free_vars.push_back(v);
    int nf = static_cast<int>(free_vars.size());
    double best = max_grad_residual(grads, to_vec(p));
    for (int iter = 0; iter < 25 && best > 1e-15; ++iter) {
        std::vector<Cplx> x = to_vec(p);
        Eigen::VectorXcd F(kVars);
        Eigen::MatrixXcd J(kVars, nf);
        for (int i = 0; i < kVars; ++i) {
            F(i) = grads[i].eval_complex(x);
            for (int k = 0; k < nf; ++k)
                J(i, k) = hess[i][free_vars[k]].eval_complex(x);
        }
        Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(-F);
        // Backtracking on the relative gradient residual.
        bool improved = false;
        double damp = 1.0;
        for (int bt = 0; bt < 6; ++bt, damp /= 2.0) {
            std::array<Cplx, 7> trial = p;
            for (int k = 0; k < nf; ++k) trial[free_vars[k]] += damp * step(k);
            double r = max_grad_residual(grads, to_vec(trial));
            if (r < best) {
                p = trial;
                best = r;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
}

}  // namespace

ConicCertificate verify_conic_singularity(const SparsePoly& psi,
                                          const SymanzikDecomposition& d) {
    require_solver_input(d, "verify_conic_singularity");
    if (!d.residual.is_zero())
        throw std::invalid_argument("verify_conic_singularity: decomposition residual nonzero");
    if (psi.nvars() != kVars)
        throw std::invalid_argument("verify_conic_singularity: expected 7 variables");
    const std::vector<int> first_block{0, 1, 2, 3}, last_block{3, 4, 5, 6};
    for (int i = 0; i < kVars; ++i) {
        SparsePoly on_c = psi.derivative(i).set_vars_to_zero(first_block);
        if (!is_rational_multiple(on_c, d.Q)) {
            return {false, "d/dx" + std::to_string(i + 1) +
                               " restricted to x1=x2=x3=x4=0 is not a rational multiple of Q"};
        }
        SparsePoly on_cp = psi.derivative(i).set_vars_to_zero(last_block);
        if (!is_rational_multiple(on_cp, d.Qprime)) {
            return {false, "d/dx" + std::to_string(i + 1) +
                               " restricted to x4=x5=x6=x7=0 is not a rational multiple of Q'"};
        }
    }
    return {true, ""};
}

SolveReport solve_isolated_singularities(const SymanzikDecomposition& d,
                                         double tol) {
    require_solver_input(d, "solve_isolated_singularities");
    if (!(tol > 0.0))
        throw std::invalid_argument("solve_isolated_singularities: tolerance must be positive");
    SolveReport report;
    report.tol = tol;
    // Binary quadratic of Q' on the line x3 = -x1-x2 (coordinates (x1 : x2)).
    auto at7 = [](std::initializer_list<std::pair<int, long>> entries) {
        std::vector<Rat> x(kVars, Rat(0));
        for (auto [v, val] : entries) x[v] = Rat(val);
        return x;
    };
    Rat qp_a = d.Qprime.eval_rat(at7({{0, 1}, {2, -1}}));
    Rat qp_g = d.Qprime.eval_rat(at7({{1, 1}, {2, -1}}));
    Rat qp_b = d.Qprime.eval_rat(at7({{0, 1}, {1, 1}, {2, -2}})) - qp_a - qp_g;
    BinQuadRoots u_roots = binary_quadratic_roots(qp_a, qp_b, qp_g);
    // Binary quadratic of Q on the line x7 = -x5-x6 (coordinates (x5 : x6)).
    Rat q_a = d.Q.eval_rat(at7({{4, 1}, {6, -1}}));
    Rat q_g = d.Q.eval_rat(at7({{5, 1}, {6, -1}}));
    Rat q_b = d.Q.eval_rat(at7({{4, 1}, {5, 1}, {6, -2}})) - q_a - q_g;
    BinQuadRoots v_roots = binary_quadratic_roots(q_a, q_b, q_g);
    report.degenerate_discriminant = u_roots.degenerate || v_roots.degenerate;
    if (u_roots.roots.empty() || v_roots.roots.empty()) return report;

    SparsePoly psi = d.reconstruct();
    SparsePoly a_poly = d.a_poly();
    std::vector<SparsePoly> grads;
    std::vector<std::vector<SparsePoly>> hess(kVars);
    for (int i = 0; i < kVars; ++i) grads.push_back(psi.derivative(i));
    for (int i = 0; i < kVars; ++i)
        for (int j = 0; j < kVars; ++j) hess[i].push_back(grads[i].derivative(j));

    auto embed = [](const RootPair& u, const RootPair& v, Cplx s, Cplx t) {
        std::array<Cplx, 7> p{};
        p[0] = s * u.c1;
        p[1] = s * u.c2;
        p[2] = -s * (u.c1 + u.c2);
        p[3] = Cplx(0.0, 0.0);  // imposed, never solved for
        p[4] = t * v.c1;
        p[5] = t * v.c2;
        p[6] = -t * (v.c1 + v.c2);
        return p;
    };
    for (size_t iu = 0; iu < u_roots.roots.size(); ++iu) {
        for (size_t iv = 0; iv < v_roots.roots.size(); ++iv) {
            const RootPair& u = u_roots.roots[iu];
            const RootPair& v = v_roots.roots[iv];
            // A restricted to the line is a binary quadratic in (s : t).
            Cplx al = a_poly.eval_complex(to_vec(embed(u, v, {1.0, 0.0}, {0.0, 0.0})));
            Cplx ga = a_poly.eval_complex(to_vec(embed(u, v, {0.0, 0.0}, {1.0, 0.0})));
            Cplx be = a_poly.eval_complex(to_vec(embed(u, v, {1.0, 0.0}, {1.0, 0.0}))) - al - ga;
            BinQuadRoots st = binary_quadratic_roots(al, be, ga);
            if (st.degenerate) report.degenerate_discriminant = true;
            for (const RootPair& r : st.roots) {
                SingularPoint pt;
                pt.coords = embed(u, v, r.c1, r.c2);
                pt.line_index = static_cast<int>(iu * 2 + iv);
                pt.chart_index = normalize_point(pt.coords);
                pt.initial_residual_grad = max_grad_residual(grads, to_vec(pt.coords));
                newton_refine(grads, hess, pt.coords, pt.chart_index);
                std::vector<Cplx> x = to_vec(pt.coords);
                pt.residual_psi = relative_residual(psi, x);
                pt.residual_grad = max_grad_residual(grads, x);
                double max_first = 0.0, max_last = 0.0;
                for (int i = 0; i <= 3; ++i) max_first = std::max(max_first, std::abs(pt.coords[i]));
                for (int i = 3; i < kVars; ++i) max_last = std::max(max_last, std::abs(pt.coords[i]));
                pt.on_conic = max_first < 1e3 * tol || max_last < 1e3 * tol;
                report.points.push_back(pt);
            }
        }
    }
    // Distinctness by greedy clustering in the chordal metric.
    double thresh = 1e3 * tol;
    std::vector<const SingularPoint*> reps;
    for (const auto& pt : report.points) {
        bool fresh = true;
        for (const auto* rep : reps)
            if (projective_separation(pt.coords, rep->coords) <= thresh) { fresh = false; break; }
        if (fresh) reps.push_back(&pt);
    }
    report.distinct_count = static_cast<int>(reps.size());
    double min_sep = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < report.points.size(); ++i)
        for (size_t j = i + 1; j < report.points.size(); ++j)
            min_sep = std::min(min_sep, projective_separation(report.points[i].coords,
                                                              report.points[j].coords));
    report.min_pairwise_separation = report.points.size() < 2 ? 0.0 : min_sep;
    return report;
}

SingularPoint classify_point(const SparsePoly& psi, const SingularPoint& p,
                             double rank_tol) {
    if (psi.nvars() != kVars)
        throw std::invalid_argument("classify_point: expected 7 variables");
    SingularPoint out = p;
    std::vector<Cplx> x = to_vec(p.coords);
    Eigen::MatrixXcd H(6, 6);
    int row = 0;
    for (int i = 0; i < kVars; ++i) {
        if (i == p.chart_index) continue;
        int col = 0;
        for (int j = 0; j < kVars; ++j) {
            if (j == p.chart_index) continue;
            H(row, col) = psi.derivative(i).derivative(j).eval_complex(x);
            ++col;
        }
        ++row;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H);
    const auto& sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (top > 0.0 && sv(k) / top > rank_tol) ++rank;
    out.hessian_rank = rank;
    out.is_odp = (rank == 6);
    return out;
}

double projective_separation(const std::array<Cplx, 7>& p,
                             const std::array<Cplx, 7>& q) {
    double np = 0.0, nq = 0.0;
    Cplx dot(0.0, 0.0);
    for (int i = 0; i < kVars; ++i) {
        np += std::norm(p[i]);
        nq += std::norm(q[i]);
        dot += std::conj(p[i]) * q[i];
    }
    if (np == 0.0 || nq == 0.0)
        throw std::domain_error("projective_separation: zero vector");
    double cosang = std::min(1.0, std::abs(dot) / std::sqrt(np * nq));
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - cosang)));
}

GenericityReport genericity_report(const TwoLoopGraph& g,
                                   const KinematicData& kin, double tol) {
    if (!g.family || (*g.family)[0] != 3 || (*g.family)[1] != 1 || (*g.family)[2] != 3)
        throw std::invalid_argument("genericity_report: requires the (3,1,3) family");
    GenericityReport rep;
    rep.seed = kin.seed;
    SparsePoly psi = massive_second_symanzik(g, kin);
    SymanzikDecomposition d = decompose(psi, 3, 3);
    SymanzikDecomposition d2 = relabel_blocks(d);
    auto diag = [&rep](const std::string& name, bool pass, const std::string& value) {
        rep.diagnostics.push_back({name, pass, value});
    };
    diag("psi_nonzero", !psi.is_zero(), std::to_string(psi.num_terms()) + " terms");
    diag("decomposition_residual_zero", d.residual.is_zero(),
         std::to_string(d.residual.num_terms()) + " residual terms");
    rep.gram_rank_q = gram_matrix(d2.Q, d2.q_block()).rank();
    rep.gram_rank_qprime = gram_matrix(d2.Qprime, d2.qprime_block()).rank();
    diag("gram_rank_q", rep.gram_rank_q == 3, std::to_string(rep.gram_rank_q));
    diag("gram_rank_qprime", rep.gram_rank_qprime == 3,
         std::to_string(rep.gram_rank_qprime));
    if (d.residual.is_zero()) {
        ConicCertificate conic = verify_conic_singularity(psi, d2);
        diag("conic_singularity_certificate", conic.pass,
             conic.pass ? "all 14 restrictions proportional" : conic.witness);
    } else {
        diag("conic_singularity_certificate", false, "skipped: nonzero residual");
    }
    rep.solve = solve_isolated_singularities(d2, tol);
    for (auto& pt : rep.solve.points) pt = classify_point(psi, pt, 1e-6);
    diag("reduction_discriminants_nonzero", !rep.solve.degenerate_discriminant,
         rep.solve.degenerate_discriminant ? "degenerate root in the reduction"
                                           : "all discriminants nonzero");
    rep.s_point_count = rep.solve.distinct_count;
    diag("isolated_count_8_distinct", rep.s_point_count == 8,
         std::to_string(rep.s_point_count) + " distinct of " +
             std::to_string(rep.solve.points.size()) + " returned");
    rep.all_odp = !rep.solve.points.empty();
    for (const auto& pt : rep.solve.points) rep.all_odp = rep.all_odp && pt.is_odp;
    {
        std::string ranks;
        for (const auto& pt : rep.solve.points)
            ranks += (ranks.empty() ? "" : ",") + std::to_string(pt.hessian_rank);
        diag("isolated_all_odp", rep.all_odp, "hessian ranks " + (ranks.empty() ? "-" : ranks));
    }
    rep.disjoint_from_conics = !rep.solve.points.empty();
    for (const auto& pt : rep.solve.points)
        rep.disjoint_from_conics = rep.disjoint_from_conics && !pt.on_conic;
    {
        int on = 0;
        for (const auto& pt : rep.solve.points) on += pt.on_conic ? 1 : 0;
        diag("isolated_disjoint_from_conics", rep.disjoint_from_conics,
             std::to_string(on) + " of " + std::to_string(rep.solve.points.size()) +
                 " points on C or C'");
    }
    {
        bool ok = !rep.solve.points.empty();
        double worst = 0.0;
        for (const auto& pt : rep.solve.points) {
            worst = std::max({worst, pt.residual_psi, pt.residual_grad});
            ok = ok && pt.residual_psi < tol && pt.residual_grad < tol;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", worst);
        diag("isolated_residuals_below_tol", ok, std::string("worst ") + buf);
    }
    {
        bool ok = !rep.solve.points.empty();
        for (const auto& pt : rep.solve.points)
            ok = ok && pt.coords[3] == Cplx(0.0, 0.0);
        diag("isolated_x4_exactly_zero", ok, "imposed by construction");
    }
    {
        // The five remaining defining constraints of the reduced system.
        SparsePoly a_poly = d2.a_poly();
        SparsePoly sum_first(kVars), sum_last(kVars);
        for (int v = 0; v < 3; ++v) sum_first = sum_first + SparsePoly::variable(kVars, v);
        for (int v = 4; v < kVars; ++v) sum_last = sum_last + SparsePoly::variable(kVars, v);
        bool ok = !rep.solve.points.empty();
        double worst = 0.0;
        for (const auto& pt : rep.solve.points) {
            std::vector<Cplx> x = to_vec(pt.coords);
            for (const SparsePoly* c : {&d2.Q, &d2.Qprime, &a_poly, &sum_first, &sum_last}) {
                double r = anchored_residual(*c, x);
                worst = std::max(worst, r);
                ok = ok && r < tol;
            }
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", worst);
        diag("reduction_constraints_satisfied", ok, std::string("worst ") + buf);
    }
    rep.min_pairwise_separation = rep.solve.min_pairwise_separation;
    diag("min_pairwise_separation", rep.min_pairwise_separation > 1e3 * tol,
         [&] {
             char buf[32];
             std::snprintf(buf, sizeof buf, "%.3e", rep.min_pairwise_separation);
             return std::string(buf);
         }());
    rep.overall_pass = true;
    for (const auto& e : rep.diagnostics) rep.overall_pass = rep.overall_pass && e.pass;
    return rep;
}

bool point_sets_match(const std::vector<std::array<Cplx, 7>>& a,
                      const std::vector<std::array<Cplx, 7>>& b, double tol) {
    auto covered = [tol](const std::vector<std::array<Cplx, 7>>& xs,
                         const std::vector<std::array<Cplx, 7>>& ys) {
        for (const auto& x : xs) {
            bool hit = false;
            for (const auto& y : ys)
                if (projective_separation(x, y) <= tol) { hit = true; break; }
            if (!hit) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

int normalize_projective(std::array<Cplx, 7>& coords) {
    return normalize_point(coords);
}

}  // namespace dbx
