// Acceptance gate: one line per criterion, PASS or FAIL with measured detail.
// The exit code is the number of failed criteria, so a fully green run exits 0.
//
// Criterion 5 states a structural expectation (eight distinct ordinary double
// points off the conics) that the measured system does not satisfy: the
// isolated-singularity equations resolve to four distinct points that lie on
// the conic pair, each with Hessian rank 4 and multiplicity two.  The
// criterion is evaluated exactly as stated and reports honest sub-part counts.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "dbx/certificates.hpp"
#include "dbx/graph.hpp"
#include "dbx/io.hpp"
#include "dbx/singular.hpp"
#include "dbx/symanzik.hpp"

namespace fs = std::filesystem;
using namespace dbx;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SparsePoly var(int nvars, int v) { return SparsePoly::variable(nvars, v); }

// Closed form for the (m,1,n) first Symanzik:
//   x_{m+1} * (sum of all other variables) + (first block sum)(last block sum)
SparsePoly closed_form_phi(int m, int n) {
    int nv = m + n + 1;
    SparsePoly first(nv), last(nv);
    for (int v = 0; v < m; ++v) first = first + var(nv, v);
    for (int v = m + 1; v < nv; ++v) last = last + var(nv, v);
    return var(nv, m) * (first + last) + first * last;
}

// Hand-built (3,1,3) decomposition in last_block labeling with zero residual.
SymanzikDecomposition handmade(const SparsePoly& Q, const SparsePoly& Qprime) {
    SymanzikDecomposition d;
    d.m = 3;
    d.n = 3;
    d.labeling = Labeling::last_block;
    d.Q = Q;
    d.Qprime = Qprime;
    d.A_matrix.assign(4, std::vector<Rat>(4, Rat(0)));
    d.residual = SparsePoly(7);
    return d;
}

bool diagnostic_pass(const GenericityReport& r, const std::string& name) {
    for (const auto& d : r.diagnostics)
        if (d.name == name) return d.pass;
    return false;
}

int run_cli(const std::string& args, const fs::path& dir) {
    std::string cmd = std::string("\"") + DOUBLEBOX_BIN + "\" " + args + " > \"" +
                      (dir / "stdout.txt").string() + "\" 2> \"" +
                      (dir / "stderr.txt").string() + "\"";
    int status = std::system(cmd.c_str());
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int n, bool pass, const std::string& detail) {
        std::printf("criterion %d: %s — %s\n", n, pass ? "PASS" : "FAIL",
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failed;
    };
    char buf[512];

    // ----- 1: three independent first-Symanzik constructions agree exactly.
    {
        auto t0 = Clock::now();
        bool agree = true;
        for (int m = 1; m <= 4 && agree; ++m)
            for (int n = 1; n <= 4 && agree; ++n) {
                TwoLoopGraph g = build_family_graph(m, 1, n);
                SparsePoly a = first_symanzik_enumerative(g);
                SparsePoly b = first_symanzik_matrix_tree(g);
                SparsePoly c = closed_form_phi(m, n);
                agree = (a == b) && (b == c);
            }
        double secs = seconds_since(t0);
        std::snprintf(buf, sizeof buf,
                      "enumeration, matrix-tree, and closed form %s exactly on "
                      "all 16 (m,1,n) families with m,n <= 4 in %.2f s (limit "
                      "10 s)",
                      agree ? "agree" : "DISAGREE", secs);
        report(1, agree && secs < 10.0, buf);
    }

    // ----- 2: contraction-deletion identity, exactly, edge by edge.
    {
        bool ok = true;
        int edges_checked = 0;
        for (int m = 1; m <= 4; ++m)
            for (int n = 1; n <= 4; ++n) {
                TwoLoopGraph g = build_family_graph(m, 1, n);
                int nv = g.nvars();
                SparsePoly phi = first_symanzik_matrix_tree(g);
                for (const Edge& e : g.edges) {
                    if (is_self_loop(g, e.id) || is_bridge(g, e.id)) continue;
                    SparsePoly contracted =
                        first_symanzik_matrix_tree(contract_edge(g, e.id))
                            .padded(nv);
                    SparsePoly deleted =
                        first_symanzik_matrix_tree(delete_edge(g, e.id))
                            .padded(nv);
                    if (phi != contracted + var(nv, e.id - 1) * deleted)
                        ok = false;
                    ++edges_checked;
                }
            }
        std::snprintf(buf, sizeof buf,
                      "phi(G) = phi(G/e) + x_e*phi(G\\e) exact for all %d "
                      "non-loop, non-bridge edges across the 16-family corpus",
                      edges_checked);
        report(2, ok && edges_checked > 0, buf);
    }

    // ----- 3: block decomposition: zero residual and the zero slot, exactly.
    {
        auto t0 = Clock::now();
        const int seeds = 100;
        std::atomic<int> bad{0};
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
        for (int idx = 0; idx < 16 * seeds; ++idx) {
            int m = idx / (4 * seeds) + 1;
            int n = (idx / seeds) % 4 + 1;
            uint64_t seed = static_cast<uint64_t>(idx % seeds) + 1;
            TwoLoopGraph g = build_family_graph(m, 1, n);
            KinematicData kin =
                sample_kinematics(g, 4, euclidean_signature(4), seed);
            SymanzikDecomposition d =
                decompose(massive_second_symanzik(g, kin), m, n);
            if (!d.residual.is_zero() ||
                d.A_matrix[static_cast<size_t>(m)][0] != 0)
                ++bad;
        }
        double secs = seconds_since(t0);
        std::snprintf(buf, sizeof buf,
                      "%d of 1600 decompositions (100 seeds x 16 families) "
                      "had nonzero residual or a filled zero slot, exact "
                      "arithmetic, %.1f s (limit 60 s)",
                      bad.load(), secs);
        report(3, bad.load() == 0 && secs < 60.0, buf);
    }

    // ----- 4: conic-singularity certificate, plus the perturbed witness.
    TwoLoopGraph dbox = build_family_graph(3, 1, 3);
    {
        bool all_ok = true;
        SparsePoly first_massive;
        SymanzikDecomposition first_decomp;
        for (uint64_t seed = 1; seed <= 100; ++seed) {
            KinematicData kin =
                sample_kinematics(dbox, 4, euclidean_signature(4), seed);
            SparsePoly massive = massive_second_symanzik(dbox, kin);
            SymanzikDecomposition d = relabel_blocks(decompose(massive, 3, 3));
            if (seed == 1) {
                first_massive = massive;
                first_decomp = d;
            }
            if (!verify_conic_singularity(massive, d).pass) all_ok = false;
        }
        // Perturb the checked cubic by x1*x5*x6: the certificate must fail
        // and must name the derivative that breaks.
        ExpVec e(7, 0);
        e[0] = 1;
        e[4] = 1;
        e[5] = 1;
        SparsePoly bump(7);
        bump.add_term(e, Rat(1));
        ConicCertificate pert =
            verify_conic_singularity(first_massive + bump, first_decomp);
        bool pert_ok = !pert.pass && !pert.witness.empty() &&
                       pert.witness.find("d/dx1") != std::string::npos;
        std::snprintf(buf, sizeof buf,
                      "certificate %s on 100 generic seeds; x1*x5*x6 "
                      "perturbation %s with witness naming d/dx1",
                      all_ok ? "passed" : "FAILED",
                      pert_ok ? "failed as required" : "did not fail properly");
        report(4, all_ok && pert_ok, buf);
    }

    // ----- 5: isolated singular points, evaluated exactly as stated.
    std::vector<GenericityReport> reports(100);
    {
        auto sig = euclidean_signature(4);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < 100; ++i) {
            KinematicData kin = sample_kinematics(
                dbox, 4, sig, static_cast<uint64_t>(i) + 1);
            reports[static_cast<size_t>(i)] =
                genericity_report(dbox, kin, 1e-9);
        }
        int panel = 0, distinct8 = 0, resid = 0, odp = 0, x4 = 0, disjoint = 0;
        for (const auto& r : reports) {
            bool a = diagnostic_pass(r, "isolated_count_8_distinct");
            bool b = diagnostic_pass(r, "isolated_residuals_below_tol");
            bool c = diagnostic_pass(r, "isolated_all_odp");
            bool d = diagnostic_pass(r, "isolated_x4_exactly_zero");
            bool f = diagnostic_pass(r, "isolated_disjoint_from_conics");
            distinct8 += a;
            resid += b;
            odp += c;
            x4 += d;
            disjoint += f;
            panel += (a && b && c && d && f);
        }
        // Independent resultant-elimination cross-check on one instance.
        KinematicData kin1 =
            sample_kinematics(dbox, 4, euclidean_signature(4), 1);
        SymanzikDecomposition d1 = relabel_blocks(
            decompose(massive_second_symanzik(dbox, kin1), 3, 3));
        auto elim = solve_by_elimination(d1, 1e-6);
        std::vector<std::array<Cplx, 7>> structured;
        for (const auto& p : reports[0].solve.points)
            structured.push_back(p.coords);
        bool match = point_sets_match(elim, structured, 1e-6);
        std::snprintf(
            buf, sizeof buf,
            "%d/100 seeds met the full panel [8 distinct, residuals < 1e-9, "
            "Hessian rank 6, x4 exactly 0, off the conics] (threshold 95; "
            "sub-parts: 8-distinct %d/100, residuals %d/100, rank-6 %d/100, "
            "x4-exact %d/100, disjoint %d/100); elimination cross-check at "
            "1e-6: %s; measured structure: 4 distinct double points on the "
            "conics, Hessian rank 4",
            panel, distinct8, resid, odp, x4, disjoint,
            match ? "match" : "MISMATCH");
        report(5, panel >= 95 && match, buf);
    }

    // ----- 6: order-2 vanishing quadrics: dimension 1, basis x4^2.
    {
        CertificateResult cert = order2_vanishing_quadrics();
        CertificateResult again = order2_vanishing_quadrics();
        SparsePoly x4sq = var(7, 3) * var(7, 3);
        bool structural = cert.pass && cert.computed == 1 &&
                          cert.witness.size() == 1 && cert.witness[0] == x4sq &&
                          again.computed == cert.computed &&
                          again.witness == cert.witness;
        // The basis quadric must vanish numerically at every singular point
        // found in criterion 5 (both solver routes pin x4 = 0 exactly).
        double worst = 0.0;
        int npoints = 0;
        for (const auto& r : reports)
            for (const auto& p : r.solve.points) {
                std::vector<Cplx> x(p.coords.begin(), p.coords.end());
                worst = std::max(worst, std::abs(x4sq.eval_complex(x)));
                ++npoints;
            }
        bool vanish = worst < 1e-8;
        std::snprintf(buf, sizeof buf,
                      "kernel dimension %d with basis x4^2 (exact, "
                      "instance-free construction); |x4^2| <= %.2e at all %d "
                      "numeric singular points (limit 1e-8)",
                      cert.computed, worst, npoints);
        report(6, structural && vanish, buf);
    }

    // ----- 7: derivative span dimension 7, trivial block intersection.
    {
        bool ok = true;
        for (uint64_t seed = 1; seed <= 100; ++seed) {
            KinematicData kin =
                sample_kinematics(dbox, 4, euclidean_signature(4), seed);
            SymanzikDecomposition d = relabel_blocks(
                decompose(massive_second_symanzik(dbox, kin), 3, 3));
            for (Side side : {Side::c, Side::cprime}) {
                auto [dim, meet] = derivative_span_certificate(d, side);
                if (!dim.pass || dim.computed != 7 || !meet.pass ||
                    meet.computed != 0)
                    ok = false;
            }
        }
        SymanzikDecomposition deg = handmade(SparsePoly(7), SparsePoly(7));
        deg.A_matrix[0][1] = Rat(1);
        auto [ddim, dmeet] = derivative_span_certificate(deg, Side::c);
        bool deg_ok = !ddim.pass && !dmeet.pass;
        std::snprintf(buf, sizeof buf,
                      "span dimension 7 and trivial quadric-block "
                      "intersection on 100 generic seeds, both sides, exact; "
                      "degenerate instance fails honestly (dimension %lld, "
                      "intersection %lld)",
                      static_cast<long long>(ddim.computed),
                      static_cast<long long>(dmeet.computed));
        report(7, ok && deg_ok, buf);
    }

    // ----- 8: conic Gram ranks equal 3; degenerate quadrics rank 1 and 2.
    {
        bool ok = true;
        for (uint64_t seed = 1; seed <= 100; ++seed) {
            KinematicData kin =
                sample_kinematics(dbox, 4, euclidean_signature(4), seed);
            SymanzikDecomposition d = relabel_blocks(
                decompose(massive_second_symanzik(dbox, kin), 3, 3));
            for (const auto& c : conic_gram_certificates(d))
                if (!c.pass || c.computed != 3) ok = false;
        }
        SparsePoly qp_good = var(7, 0) * var(7, 0) + var(7, 1) * var(7, 1) +
                             var(7, 2) * var(7, 2);
        auto rank1 =
            conic_gram_certificates(handmade(var(7, 4) * var(7, 4), qp_good));
        auto rank2 =
            conic_gram_certificates(handmade(var(7, 4) * var(7, 5), qp_good));
        bool deg_ok = !rank1[0].pass && rank1[0].computed == 1 &&
                      !rank2[0].pass && rank2[0].computed == 2;
        std::snprintf(buf, sizeof buf,
                      "Gram ranks of Q and Q' equal 3 on 100 generic seeds "
                      "(exact); degenerate x5^2 and x5*x6 yield ranks %lld "
                      "and %lld",
                      static_cast<long long>(rank1[0].computed),
                      static_cast<long long>(rank2[0].computed));
        report(8, ok && deg_ok, buf);
    }

    // ----- 9: CLI determinism: identical flags and seed, byte-identical output.
    {
        fs::path root = fs::temp_directory_path() / "dbx_acceptance";
        fs::remove_all(root);
        fs::create_directories(root);
        struct Run {
            const char* label;
            std::string args;
        };
        std::vector<Run> runs = {
            {"emit", "emit --family 3,1,3 --seed 7"},
            {"verify", "verify --family 3,1,3 --D 4 --seed 11"},
            {"sweep", "sweep --seeds 2 --seed 5"},
        };
        bool ok = true;
        for (const Run& r : runs) {
            fs::path a = root / (std::string(r.label) + "_a");
            fs::path b = root / (std::string(r.label) + "_b");
            fs::create_directories(a);
            fs::create_directories(b);
            int ca = run_cli(r.args + " --out \"" + (a / "out").string() + "\"",
                             a);
            int cb = run_cli(r.args + " --out \"" + (b / "out").string() + "\"",
                             b);
            if (ca != cb) ok = false;
            if (slurp(a / "stdout.txt") != slurp(b / "stdout.txt")) ok = false;
            for (const auto& entry : fs::directory_iterator(a / "out")) {
                fs::path other = b / "out" / entry.path().filename();
                if (!fs::exists(other) ||
                    slurp(entry.path()) != slurp(other))
                    ok = false;
            }
        }
        std::snprintf(buf, sizeof buf,
                      "emit, verify, and sweep repeated with identical flags "
                      "and seeds produced byte-identical stdout and files: %s",
                      ok ? "yes" : "NO");
        report(9, ok, buf);
    }

    std::printf("%d of 9 criteria passed\n", 9 - failed);
    return failed;
}
