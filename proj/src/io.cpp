#include "dbx/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dbx {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

static json complex_to_json(const Cplx& z) {
    return json::array({format_double(z.real()), format_double(z.imag())});
}

json poly_to_json(const SparsePoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["exp"] = e;
        t["num"] = num_string(c);
        t["den"] = den_string(c);
        terms.push_back(std::move(t));
    }
    json j;
    j["nvars"] = p.nvars();
    j["terms"] = std::move(terms);
    return j;
}

SparsePoly poly_from_json(const json& j) {
    SparsePoly p(j.at("nvars").get<int>());
    for (const auto& t : j.at("terms")) {
        ExpVec e = t.at("exp").get<ExpVec>();
        Rat c = rat_parse(t.at("num").get<std::string>() + "/" +
                          t.at("den").get<std::string>());
        p.add_term(e, c);
    }
    return p;
}

json graph_to_json(const TwoLoopGraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges) {
        json je;
        je["id"] = e.id;
        je["ends"] = json::array({e.a, e.b});
        edges.push_back(std::move(je));
    }
    json j;
    j["vertices"] = g.vertices;
    j["edges"] = std::move(edges);
    if (g.family) {
        const auto& f = *g.family;
        j["family"] = json::array({f[0], f[1], f[2]});
    } else {
        j["family"] = nullptr;
    }
    j["labeling_convention"] =
        "junction vertices 1 and 2; subdivision vertices and edges numbered "
        "along the first, middle, then last strand";
    return j;
}

TwoLoopGraph graph_from_json(const json& j) {
    TwoLoopGraph g;
    g.vertices = j.at("vertices").get<std::vector<int>>();
    for (const auto& je : j.at("edges")) {
        Edge e;
        e.id = je.at("id").get<int>();
        e.a = je.at("ends").at(0).get<int>();
        e.b = je.at("ends").at(1).get<int>();
        g.edges.push_back(e);
    }
    if (!j.at("family").is_null()) {
        auto f = j.at("family").get<std::vector<int>>();
        if (f.size() != 3)
            throw std::invalid_argument("graph JSON: family must have 3 entries");
        g.family = std::array<int, 3>{f[0], f[1], f[2]};
    }
    return g;
}

json kinematics_to_json(const KinematicData& kin) {
    json j;
    j["D"] = kin.D;
    j["signature"] = kin.signature;
    json momenta = json::object();
    for (const auto& [v, w] : kin.momenta) {
        json comps = json::array();
        for (const Rat& c : w) comps.push_back(rat_string(c));
        momenta[std::to_string(v)] = std::move(comps);
    }
    j["momenta"] = std::move(momenta);
    json masses2 = json::object();
    for (const auto& [e, m2] : kin.masses2)
        masses2[std::to_string(e)] = rat_string(m2);
    j["masses2"] = std::move(masses2);
    json meta;
    meta["seed"] = kin.seed;
    meta["known_nongeneric"] = kin.known_nongeneric;
    j["metadata"] = std::move(meta);
    return j;
}

KinematicData kinematics_from_json(const json& j) {
    KinematicData kin;
    kin.D = j.at("D").get<int>();
    kin.signature = j.at("signature").get<std::vector<int>>();
    for (const auto& [key, comps] : j.at("momenta").items()) {
        std::vector<Rat> w;
        for (const auto& c : comps) w.push_back(rat_parse(c.get<std::string>()));
        kin.momenta[std::stoi(key)] = std::move(w);
    }
    for (const auto& [key, m2] : j.at("masses2").items())
        kin.masses2[std::stoi(key)] = rat_parse(m2.get<std::string>());
    const json& meta = j.at("metadata");
    kin.seed = meta.at("seed").get<uint64_t>();
    kin.known_nongeneric = meta.at("known_nongeneric").get<bool>();
    return kin;
}

static const char* labeling_name(Labeling l) {
    return l == Labeling::first_block ? "first_block" : "last_block";
}

json decomposition_to_json(const SymanzikDecomposition& d) {
    json j;
    j["m"] = d.m;
    j["n"] = d.n;
    j["labeling"] = labeling_name(d.labeling);
    j["Q"] = poly_to_json(d.Q);
    j["Qprime"] = poly_to_json(d.Qprime);
    json rows = json::array();
    for (const auto& row : d.A_matrix) {
        json jr = json::array();
        for (const Rat& v : row) jr.push_back(rat_string(v));
        rows.push_back(std::move(jr));
    }
    j["A_matrix"] = std::move(rows);
    j["residual"] = poly_to_json(d.residual);
    return j;
}

SymanzikDecomposition decomposition_from_json(const json& j) {
    SymanzikDecomposition d;
    d.m = j.at("m").get<int>();
    d.n = j.at("n").get<int>();
    std::string lab = j.at("labeling").get<std::string>();
    if (lab == "first_block") {
        d.labeling = Labeling::first_block;
    } else if (lab == "last_block") {
        d.labeling = Labeling::last_block;
    } else {
        throw std::invalid_argument("decomposition JSON: unknown labeling " + lab);
    }
    d.Q = poly_from_json(j.at("Q"));
    d.Qprime = poly_from_json(j.at("Qprime"));
    for (const auto& jr : j.at("A_matrix")) {
        std::vector<Rat> row;
        for (const auto& v : jr) row.push_back(rat_parse(v.get<std::string>()));
        d.A_matrix.push_back(std::move(row));
    }
    d.residual = poly_from_json(j.at("residual"));
    return d;
}

json certificate_to_json(const CertificateResult& c) {
    json j;
    j["name"] = c.name;
    j["claimed"] = c.claimed;
    j["computed"] = c.computed;
    j["pass"] = c.pass;
    json witness = json::array();
    for (const SparsePoly& w : c.witness) witness.push_back(poly_to_json(w));
    j["witness"] = std::move(witness);
    return j;
}

json certificates_to_json(const std::vector<CertificateResult>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back(certificate_to_json(c));
    json j;
    j["certificates"] = std::move(arr);
    bool all = true;
    for (const auto& c : cs) all = all && c.pass;
    j["all_pass"] = all;
    return j;
}

json singular_point_to_json(const SingularPoint& p) {
    json j;
    json coords = json::array();
    for (const Cplx& z : p.coords) coords.push_back(complex_to_json(z));
    j["coords"] = std::move(coords);
    j["residual_psi"] = format_double(p.residual_psi);
    j["residual_grad"] = format_double(p.residual_grad);
    j["initial_residual_grad"] = format_double(p.initial_residual_grad);
    j["hessian_rank"] = p.hessian_rank;
    j["is_odp"] = p.is_odp;
    j["chart_index"] = p.chart_index;
    j["line_index"] = p.line_index;
    j["on_conic"] = p.on_conic;
    return j;
}

json solve_report_to_json(const SolveReport& r) {
    json j;
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back(singular_point_to_json(p));
    j["points"] = std::move(pts);
    j["distinct_count"] = r.distinct_count;
    j["min_pairwise_separation"] = format_double(r.min_pairwise_separation);
    j["degenerate_discriminant"] = r.degenerate_discriminant;
    j["tol"] = format_double(r.tol);
    return j;
}

json genericity_to_json(const GenericityReport& r) {
    json j;
    j["seed"] = r.seed;
    json diags = json::array();
    for (const auto& d : r.diagnostics) {
        json jd;
        jd["name"] = d.name;
        jd["pass"] = d.pass;
        jd["value"] = d.value;
        diags.push_back(std::move(jd));
    }
    j["diagnostics"] = std::move(diags);
    json pts = json::array();
    for (const auto& p : r.solve.points) pts.push_back(singular_point_to_json(p));
    j["points"] = std::move(pts);
    j["gram_rank_q"] = r.gram_rank_q;
    j["gram_rank_qprime"] = r.gram_rank_qprime;
    j["s_point_count"] = r.s_point_count;
    j["all_odp"] = r.all_odp;
    j["min_pairwise_separation"] = format_double(r.min_pairwise_separation);
    j["disjoint_from_conics"] = r.disjoint_from_conics;
    j["degenerate_discriminant"] = r.solve.degenerate_discriminant;
    j["overall_pass"] = r.overall_pass;
    return j;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::string decomposition_to_text(const SymanzikDecomposition& d) {
    std::ostringstream os;
    os << "block decomposition of an (" << d.m << ",1," << d.n << ") instance\n";
    os << "labeling: " << labeling_name(d.labeling) << "\n";
    os << "Q       = " << d.Q.to_string() << "\n";
    os << "Q'      = " << d.Qprime.to_string() << "\n";
    os << "A entries (rows over x_1..x_" << d.m + 1 << ", columns over x_"
       << d.m + 1 << "..x_" << d.m + d.n + 1 << "):\n";
    for (const auto& row : d.A_matrix) {
        os << " ";
        for (const Rat& v : row) os << " " << rat_string(v);
        os << "\n";
    }
    os << "residual = " << d.residual.to_string() << "\n";
    return os.str();
}

std::string certificates_to_text(const std::vector<CertificateResult>& cs) {
    std::ostringstream os;
    for (const auto& c : cs) {
        os << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  claimed "
           << c.claimed << "  computed " << c.computed;
        if (!c.pass && !c.witness.empty())
            os << "  witness " << c.witness.front().to_string();
        os << "\n";
    }
    return os.str();
}

std::string genericity_to_text(const GenericityReport& r) {
    std::ostringstream os;
    os << "genericity report, seed " << r.seed << "\n";
    for (const auto& d : r.diagnostics) {
        os << "  " << (d.pass ? "pass" : "FAIL") << "  " << d.name;
        if (!d.value.empty()) os << "  (" << d.value << ")";
        os << "\n";
    }
    os << "points (largest coordinate normalized to 1):\n";
    for (const auto& p : r.solve.points) {
        os << "  line " << p.line_index << ": [";
        for (int i = 0; i < 7; ++i) {
            if (i) os << ", ";
            os << format_double(p.coords[static_cast<size_t>(i)].real()) << (p.coords[static_cast<size_t>(i)].imag() >= 0 ? "+" : "")
               << format_double(p.coords[static_cast<size_t>(i)].imag()) << "i";
        }
        os << "]  hessian rank " << p.hessian_rank
           << (p.on_conic ? "  (on C or C')" : "") << "\n";
    }
    os << "overall: " << (r.overall_pass ? "pass" : "FAIL") << "\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace dbx
