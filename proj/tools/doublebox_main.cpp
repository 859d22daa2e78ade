// Command-line front end: construct two-loop Symanzik polynomials, extract
// and check the block decomposition, solve and classify the singular locus of
// the double-box cubic, and run the exact linear-algebra certificates.
//
// Exit codes: 0 success, 2 usage error, 3 verification failure, 1 internal.
// All output is deterministic for fixed flags and seed; the only environment
// input is DOUBLEBOX_LOG=debug, which enables progress lines on stderr.

#include <CLI11.hpp>

#include <array>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dbx/certificates.hpp"
#include "dbx/graph.hpp"
#include "dbx/io.hpp"
#include "dbx/singular.hpp"
#include "dbx/sweep.hpp"
#include "dbx/symanzik.hpp"

namespace fs = std::filesystem;

namespace {

using namespace dbx;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family = "3,1,3";
    int D = 4;
    std::string signature;  // empty: all-plus of length D
    uint64_t seed = 0;
    int seeds = 1;
    double tol = 1e-9;
    std::string out = "out";
    std::string format = "json";
    bool serial = false;
    bool cross_check = false;
    bool inject_perturbation = false;
};

bool debug_log_enabled() {
    const char* v = std::getenv("DOUBLEBOX_LOG");
    return v != nullptr && std::string(v) == "debug";
}

void log_debug(const std::string& msg) {
    if (debug_log_enabled()) std::cerr << "[doublebox] " << msg << "\n";
}

std::array<int, 3> parse_family(const std::string& s) {
    std::array<int, 3> f{};
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> f[0] >> c1 >> f[1] >> c2 >> f[2]) || c1 != ',' || c2 != ',' ||
        !is.eof())
        throw UsageError("--family expects three comma-separated integers, got '" +
                         s + "'");
    if (f[0] < 1 || f[1] < 1 || f[2] < 1)
        throw UsageError("--family components must all be at least 1");
    return f;
}

// Accepts '+' and '-' (also the UTF-8 minus sign) per momentum component.
std::vector<int> parse_signature(const std::string& s, int D) {
    if (s.empty()) return euclidean_signature(D);
    std::vector<int> sig;
    for (size_t i = 0; i < s.size();) {
        if (s[i] == '+') {
            sig.push_back(1);
            ++i;
        } else if (s[i] == '-') {
            sig.push_back(-1);
            ++i;
        } else if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
                   static_cast<unsigned char>(s[i + 1]) == 0x88 &&
                   static_cast<unsigned char>(s[i + 2]) == 0x92) {
            sig.push_back(-1);
            i += 3;
        } else {
            throw UsageError("--signature may contain only '+' and '-'");
        }
    }
    if (static_cast<int>(sig.size()) != D)
        throw UsageError("--signature length must equal --D");
    return sig;
}

void validate_common(const Options& o) {
    if (o.D < 1) throw UsageError("--D must be at least 1");
    if (o.tol <= 0.0) throw UsageError("--tol must be positive");
}

struct Instance {
    TwoLoopGraph g;
    KinematicData kin;
    uint64_t stream_seed = 0;
    SparsePoly phi, psi, massive;
};

// Every command maps the user seed to instance stream 0 of a sweep with that
// master seed, so single-instance commands agree with `sweep --seeds 1`.
Instance make_instance(const Options& o, const std::array<int, 3>& fam) {
    Instance inst;
    inst.g = build_family_graph(fam[0], fam[1], fam[2]);
    inst.stream_seed = derive_stream_seed(o.seed, 0);
    inst.kin = sample_kinematics(inst.g, o.D, parse_signature(o.signature, o.D),
                                 inst.stream_seed);
    log_debug("sampled kinematics, stream seed " +
              std::to_string(inst.stream_seed));
    inst.phi = first_symanzik_enumerative(inst.g);
    inst.psi = second_symanzik(inst.g, inst.kin);
    inst.massive = massive_second_symanzik(inst.g, inst.kin);
    log_debug("massive second Symanzik has " +
              std::to_string(inst.massive.num_terms()) + " terms");
    return inst;
}

void emit_stdout(const Options& o, const json& index, const std::string& text) {
    if (o.format == "json") {
        std::cout << dump_json(index);
    } else {
        std::cout << text;
    }
}

std::string family_string(const std::array<int, 3>& fam) {
    return std::to_string(fam[0]) + "," + std::to_string(fam[1]) + "," +
           std::to_string(fam[2]);
}

// ---------------------------------------------------------------------------

int cmd_emit(const Options& o) {
    auto fam = parse_family(o.family);
    Instance inst = make_instance(o, fam);
    fs::create_directories(o.out);

    auto path = [&](const char* name) { return (fs::path(o.out) / name).string(); };
    write_file(path("graph.json"), dump_json(graph_to_json(inst.g)));
    write_file(path("kinematics.json"), dump_json(kinematics_to_json(inst.kin)));
    write_file(path("phi.json"), dump_json(poly_to_json(inst.phi)));
    write_file(path("psi.json"), dump_json(poly_to_json(inst.psi)));
    write_file(path("psi_massive.json"), dump_json(poly_to_json(inst.massive)));

    std::ostringstream text;
    text << "family (" << family_string(fam) << "), seed " << o.seed
         << ", stream seed " << inst.stream_seed << "\n";
    text << "graph: " << inst.g.vertices.size() << " vertices, "
         << inst.g.edges.size() << " edges, loop number "
         << inst.g.loop_number() << "\n";
    text << "phi  = " << inst.phi.to_string() << "\n";
    text << "psi  = " << inst.psi.to_string() << "\n";
    text << "Psi (massive) = " << inst.massive.to_string() << "\n";
    write_file(path("emit.txt"), text.str());

    json index;
    index["command"] = "emit";
    index["family"] = json::array({fam[0], fam[1], fam[2]});
    index["seed"] = o.seed;
    index["stream_seed"] = inst.stream_seed;
    index["phi_terms"] = inst.phi.num_terms();
    index["psi_terms"] = inst.psi.num_terms();
    index["massive_terms"] = inst.massive.num_terms();
    index["files"] = json::array({"graph.json", "kinematics.json", "phi.json",
                                  "psi.json", "psi_massive.json", "emit.txt"});
    emit_stdout(o, index, text.str());
    return 0;
}

int cmd_decompose(const Options& o) {
    auto fam = parse_family(o.family);
    if (fam[1] != 1)
        throw UsageError("decompose requires an (m,1,n) family");
    Instance inst = make_instance(o, fam);
    SymanzikDecomposition d = decompose(inst.massive, fam[0], fam[2]);
    fs::create_directories(o.out);

    std::string text = decomposition_to_text(d);
    write_file((fs::path(o.out) / "decomposition.json").string(),
               dump_json(decomposition_to_json(d)));
    write_file((fs::path(o.out) / "decomposition.txt").string(), text);

    json index;
    index["command"] = "decompose";
    index["family"] = json::array({fam[0], fam[1], fam[2]});
    index["seed"] = o.seed;
    index["stream_seed"] = inst.stream_seed;
    index["residual_zero"] = d.residual.is_zero();
    index["files"] = json::array({"decomposition.json", "decomposition.txt"});
    emit_stdout(o, index, text);
    return 0;
}

int cmd_singular(const Options& o) {
    auto fam = parse_family(o.family);
    if (fam != std::array<int, 3>{3, 1, 3})
        throw UsageError("singular requires --family 3,1,3");
    Instance inst = make_instance(o, fam);
    GenericityReport report = genericity_report(inst.g, inst.kin, o.tol);
    json jr = genericity_to_json(report);

    if (o.cross_check) {
        log_debug("running resultant-elimination cross-check");
        SymanzikDecomposition d =
            relabel_blocks(decompose(inst.massive, 3, 3));
        auto elim = solve_by_elimination(d, 1e-6);
        std::vector<std::array<Cplx, 7>> structured;
        for (const auto& p : report.solve.points) structured.push_back(p.coords);
        json cc;
        cc["elimination_point_count"] = static_cast<int>(elim.size());
        cc["match"] = point_sets_match(elim, structured, 1e-6);
        cc["tol"] = format_double(1e-6);
        jr["cross_check"] = std::move(cc);
    }

    fs::create_directories(o.out);
    std::string text = genericity_to_text(report);
    write_file((fs::path(o.out) / "singular.json").string(), dump_json(jr));
    write_file((fs::path(o.out) / "singular.txt").string(), text);
    emit_stdout(o, jr, text);
    return 0;
}

std::vector<CertificateResult> run_certificates(const SymanzikDecomposition& d) {
    std::vector<CertificateResult> certs;
    certs.push_back(order2_vanishing_quadrics());
    for (auto& c : conic_gram_certificates(d)) certs.push_back(std::move(c));
    auto span_c = derivative_span_certificate(d, Side::c);
    certs.push_back(std::move(span_c.first));
    certs.push_back(std::move(span_c.second));
    auto span_cp = derivative_span_certificate(d, Side::cprime);
    certs.push_back(std::move(span_cp.first));
    certs.push_back(std::move(span_cp.second));
    return certs;
}

int cmd_certify(const Options& o) {
    auto fam = parse_family(o.family);
    if (fam != std::array<int, 3>{3, 1, 3})
        throw UsageError("certify requires --family 3,1,3");
    Instance inst = make_instance(o, fam);
    SymanzikDecomposition d = relabel_blocks(decompose(inst.massive, 3, 3));
    std::vector<CertificateResult> certs = run_certificates(d);

    fs::create_directories(o.out);
    json jc = certificates_to_json(certs);
    jc["seed"] = o.seed;
    jc["stream_seed"] = inst.stream_seed;
    std::string text = certificates_to_text(certs);
    write_file((fs::path(o.out) / "certificates.json").string(), dump_json(jc));
    write_file((fs::path(o.out) / "certificates.txt").string(), text);
    emit_stdout(o, jc, text);

    for (const auto& c : certs)
        if (!c.pass) return 3;
    return 0;
}

int cmd_verify(const Options& o) {
    auto fam = parse_family(o.family);
    if (fam[1] != 1)
        throw UsageError("verify requires an (m,1,n) family");
    bool is_double_box = fam == std::array<int, 3>{3, 1, 3};
    if (o.inject_perturbation && !is_double_box)
        throw UsageError("--inject-perturbation requires --family 3,1,3");

    Instance inst = make_instance(o, fam);
    SymanzikDecomposition d = decompose(inst.massive, fam[0], fam[2]);

    // Test hook: perturb the cubic checked against the (clean) decomposition,
    // so the conic-singularity certificate must fail with a named witness.
    SparsePoly checked = inst.massive;
    if (o.inject_perturbation) {
        ExpVec e(static_cast<size_t>(checked.nvars()), 0);
        e[0] = 1;
        e[4] = 1;
        e[5] = 1;
        SparsePoly bump(checked.nvars());
        bump.add_term(e, Rat(1));
        checked = checked + bump;
    }

    json checks = json::array();
    bool all_pass = true;
    auto add_check = [&](const std::string& name, const std::string& status,
                         const std::string& detail) {
        json c;
        c["name"] = name;
        c["status"] = status;
        c["detail"] = detail;
        checks.push_back(std::move(c));
        if (status == "fail") all_pass = false;
    };

    // Exact decomposition suite (any (m,1,n)).
    add_check("decomposition_residual_zero",
              d.residual.is_zero() ? "pass" : "fail",
              std::to_string(d.residual.num_terms()) + " residual terms");
    {
        int mid = d.middle_var();
        ExpVec cube(static_cast<size_t>(d.nvars()), 0);
        cube[static_cast<size_t>(mid)] = 3;
        bool slot = d.A_matrix[static_cast<size_t>(d.m)][0] == 0 &&
                    inst.massive.coefficient_of(cube) == 0;
        add_check("a_matrix_zero_slot", slot ? "pass" : "fail",
                  "middle-middle entry and cube coefficient");
    }

    json genericity = nullptr;
    if (is_double_box) {
        SymanzikDecomposition dl = relabel_blocks(d);
        ConicCertificate conic = verify_conic_singularity(checked, dl);
        add_check("conic_singularity_certificate", conic.pass ? "pass" : "fail",
                  conic.pass ? "all restrictions proportional" : conic.witness);
        for (const CertificateResult& c : run_certificates(dl))
            add_check(c.name, c.pass ? "pass" : "fail",
                      "claimed " + std::to_string(c.claimed) + ", computed " +
                          std::to_string(c.computed));
        if (!o.inject_perturbation) {
            GenericityReport report = genericity_report(inst.g, inst.kin, o.tol);
            genericity = genericity_to_json(report);
        }
    } else {
        add_check("conic_singularity_certificate", "not applicable",
                  "singular-locus suite is specific to (3,1,3)");
        add_check("certificate_suite", "not applicable",
                  "certificate suite is specific to (3,1,3)");
    }

    json jv;
    jv["command"] = "verify";
    jv["family"] = json::array({fam[0], fam[1], fam[2]});
    jv["seed"] = o.seed;
    jv["stream_seed"] = inst.stream_seed;
    jv["checks"] = std::move(checks);
    jv["all_pass"] = all_pass;
    jv["genericity"] = std::move(genericity);

    std::ostringstream text;
    text << "verify, family (" << family_string(fam) << "), seed " << o.seed
         << "\n";
    for (const auto& c : jv["checks"]) {
        text << "  " << c["status"].get<std::string>() << "  "
             << c["name"].get<std::string>() << "  ("
             << c["detail"].get<std::string>() << ")\n";
    }
    text << (all_pass ? "all checks passed\n" : "some checks FAILED\n");

    fs::create_directories(o.out);
    write_file((fs::path(o.out) / "verify.json").string(), dump_json(jv));
    write_file((fs::path(o.out) / "verify.txt").string(), text.str());
    emit_stdout(o, jv, text.str());
    return all_pass ? 0 : 3;
}

int cmd_sweep(const Options& o) {
    auto fam = parse_family(o.family);
    if (fam != std::array<int, 3>{3, 1, 3})
        throw UsageError("sweep requires --family 3,1,3");
    if (o.seeds < 1) throw UsageError("--seeds must be at least 1");

    SweepConfig cfg;
    cfg.master_seed = o.seed;
    cfg.count = o.seeds;
    cfg.D = o.D;
    cfg.signature = parse_signature(o.signature, o.D);
    cfg.tol = o.tol;
    cfg.m = fam[0];
    cfg.b = fam[1];
    cfg.n = fam[2];
    log_debug("sweeping " + std::to_string(o.seeds) + " seeds (" +
              (o.serial ? "serial" : "parallel") + ")");
    SweepResult res =
        run_sweep(cfg, o.serial ? ExecPolicy::serial : ExecPolicy::parallel);

    json js;
    js["command"] = "sweep";
    js["master_seed"] = o.seed;
    js["count"] = o.seeds;
    js["D"] = o.D;
    js["signature"] = cfg.signature;
    js["tol"] = format_double(o.tol);
    json reports = json::array();
    for (const auto& r : res.reports) reports.push_back(genericity_to_json(r));
    js["reports"] = std::move(reports);
    json summary;
    summary["overall_passes"] = res.summary.overall_passes;
    summary["pass_rate"] = format_double(res.summary.pass_rate);
    json hist = json::object();
    for (const auto& [k, v] : res.summary.s_count_histogram)
        hist[std::to_string(k)] = v;
    summary["s_count_histogram"] = std::move(hist);
    json diag = json::array();
    for (const std::string& name : res.summary.diagnostic_order) {
        json jd;
        jd["name"] = name;
        jd["passes"] = res.summary.diagnostic_passes.at(name);
        diag.push_back(std::move(jd));
    }
    summary["diagnostic_passes"] = std::move(diag);
    js["summary"] = summary;

    std::ostringstream text;
    text << "sweep of " << o.seeds << " seeds, master seed " << o.seed
         << ", D = " << o.D << "\n";
    text << "overall passes: " << res.summary.overall_passes << "/" << o.seeds
         << " (rate " << format_double(res.summary.pass_rate) << ")\n";
    text << "distinct-point histogram:\n";
    for (const auto& [k, v] : res.summary.s_count_histogram)
        text << "  " << k << " points: " << v << " seeds\n";
    text << "diagnostic pass counts:\n";
    for (const std::string& name : res.summary.diagnostic_order)
        text << "  " << name << ": " << res.summary.diagnostic_passes.at(name)
             << "/" << o.seeds << "\n";

    fs::create_directories(o.out);
    write_file((fs::path(o.out) / "sweep.json").string(), dump_json(js));
    write_file((fs::path(o.out) / "sweep.txt").string(), text.str());
    json stdout_summary;
    stdout_summary["command"] = "sweep";
    stdout_summary["master_seed"] = o.seed;
    stdout_summary["count"] = o.seeds;
    stdout_summary["summary"] = summary;
    emit_stdout(o, stdout_summary, text.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-box Symanzik polynomial and singular-locus toolkit"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--family", o.family,
                        "graph family m,b,n (default 3,1,3)");
        sub->add_option("--D", o.D, "momentum-space dimension (default 4)");
        sub->add_option("--signature", o.signature,
                        "quadratic-form signature, e.g. ++++ or +---");
        sub->add_option("--seed", o.seed, "master seed (default 0)");
        sub->add_option("--tol", o.tol, "numeric tolerance (default 1e-9)");
        sub->add_option("--out", o.out, "output directory (default out)");
        sub->add_option("--format", o.format, "stdout format: json or text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* emit =
        app.add_subcommand("emit", "construct and write graph, kinematics, and "
                                   "Symanzik polynomials");
    add_common(emit);
    CLI::App* dec = app.add_subcommand(
        "decompose", "extract the block decomposition of the massive cubic");
    add_common(dec);
    CLI::App* sing = app.add_subcommand(
        "singular", "solve and classify the singular locus of the double-box "
                    "cubic");
    add_common(sing);
    sing->add_flag("--cross-check", o.cross_check,
                   "also run the independent resultant-elimination solver");
    CLI::App* cert = app.add_subcommand(
        "certify", "run the exact linear-algebra certificates");
    add_common(cert);
    CLI::App* ver = app.add_subcommand(
        "verify", "consolidated exact checks; exit 3 if any fails");
    add_common(ver);
    ver->add_flag("--inject-perturbation", o.inject_perturbation,
                  "test hook: perturb the checked cubic so a check must fail")
        ->group("");
    CLI::App* swp = app.add_subcommand(
        "sweep", "genericity reports over many derived seeds");
    add_common(swp);
    swp->add_option("--seeds", o.seeds, "number of instances (default 1)");
    swp->add_flag("--serial", o.serial, "disable parallel execution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        validate_common(o);
        if (emit->parsed()) return cmd_emit(o);
        if (dec->parsed()) return cmd_decompose(o);
        if (sing->parsed()) return cmd_singular(o);
        if (cert->parsed()) return cmd_certify(o);
        if (ver->parsed()) return cmd_verify(o);
        if (swp->parsed()) return cmd_sweep(o);
        std::cerr << "no command given\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
