#include "dbx/symanzik.hpp"

#include <stdexcept>

#include "dbx/seedrng.hpp"

namespace dbx {

std::vector<int> euclidean_signature(int D) {
    return std::vector<int>(D, +1);
}

KinematicData sample_kinematics(const TwoLoopGraph& g, int D,
                                const std::vector<int>& signature,
                                uint64_t seed) {
    if (D < 1) throw std::invalid_argument("sample_kinematics: D must be >= 1");
    if (static_cast<int>(signature.size()) != D)
        throw std::invalid_argument("sample_kinematics: signature length != D");
    for (int s : signature)
        if (s != 1 && s != -1)
            throw std::invalid_argument("sample_kinematics: signature entries must be +-1");
    KinematicData kin;
    kin.D = D;
    kin.signature = signature;
    kin.seed = seed;
    kin.known_nongeneric = (D == 1);
    SplitMix64 rng(seed);
    auto draw = [&rng]() {
        long num = static_cast<long>(rng.next() % 20001u) - 10000;
        long den = static_cast<long>(rng.next() % 100u) + 1;
        return rat(num, den);
    };
    // All vertices but the last draw momenta, in ascending vertex order; the
    // last takes minus the sum so conservation holds exactly.
    std::vector<Rat> total(D, Rat(0));
    for (size_t i = 0; i + 1 < g.vertices.size(); ++i) {
        std::vector<Rat> w(D);
        for (int d = 0; d < D; ++d) {
            w[d] = draw();
            total[d] += w[d];
        }
        kin.momenta[g.vertices[i]] = std::move(w);
    }
    std::vector<Rat> last(D);
    for (int d = 0; d < D; ++d) last[d] = -total[d];
    kin.momenta[g.vertices.back()] = std::move(last);
    // Masses in edge-id order, squared so that m^2 >= 0.
    for (const auto& e : g.edges) {
        Rat mass = draw();
        kin.masses2[e.id] = mass * mass;
    }
    return kin;
}

Rat cut_coefficient(const TwoLoopGraph& g, const KinematicData& kin,
                    const std::array<int, 3>& triple) {
    CutResult cut = cut_classify(g, {triple[0], triple[1], triple[2]});
    if (!cut.is_two_forest())
        throw std::invalid_argument("cut_coefficient: triple is not a 2-forest cut");
    // Sum momenta over the component containing the smallest vertex id; the
    // squared value is component-independent because the total momentum is 0.
    const std::vector<int>& comp = cut.component_vertex_sets.front();
    std::vector<Rat> flow(kin.D, Rat(0));
    for (int v : comp) {
        auto it = kin.momenta.find(v);
        if (it == kin.momenta.end())
            throw std::invalid_argument("cut_coefficient: vertex without momentum");
        for (int d = 0; d < kin.D; ++d) flow[d] += it->second[d];
    }
    Rat c(0);
    for (int d = 0; d < kin.D; ++d) c += Rat(kin.signature[d]) * flow[d] * flow[d];
    return c;
}

SparsePoly second_symanzik(const TwoLoopGraph& g, const KinematicData& kin) {
    int nv = g.nvars();
    SparsePoly psi(nv);
    for (const auto& cut : two_forest_cuts(g)) {
        Rat c = cut_coefficient(g, kin, cut.triple);
        ExpVec e(nv, 0);
        for (int id : cut.triple) e[id - 1] = 1;
        psi.add_term(e, c);
    }
    return psi;
}

SparsePoly massive_second_symanzik(const TwoLoopGraph& g,
                                   const KinematicData& kin) {
    int nv = g.nvars();
    SparsePoly mass_form(nv);
    for (const auto& e : g.edges) {
        auto it = kin.masses2.find(e.id);
        if (it == kin.masses2.end())
            throw std::invalid_argument("massive_second_symanzik: edge without mass");
        ExpVec exp(nv, 0);
        exp[e.id - 1] = 1;
        mass_form.add_term(exp, it->second);
    }
    return mass_form * first_symanzik_enumerative(g) + second_symanzik(g, kin);
}

std::vector<int> SymanzikDecomposition::q_block() const {
    std::vector<int> block;
    if (labeling == Labeling::first_block)
        for (int v = 0; v < m; ++v) block.push_back(v);
    else
        for (int v = m + 1; v <= m + n; ++v) block.push_back(v);
    return block;
}

std::vector<int> SymanzikDecomposition::qprime_block() const {
    std::vector<int> block;
    if (labeling == Labeling::first_block)
        for (int v = m + 1; v <= m + n; ++v) block.push_back(v);
    else
        for (int v = 0; v < m; ++v) block.push_back(v);
    return block;
}

SparsePoly SymanzikDecomposition::a_poly() const {
    int nv = nvars();
    SparsePoly a(nv);
    for (int r = 0; r <= m; ++r) {
        for (int c = 0; c <= n; ++c) {
            if (A_matrix[r][c] == 0) continue;
            ExpVec e(nv, 0);
            e[r] += 1;
            e[m + c] += 1;
            a.add_term(e, A_matrix[r][c]);
        }
    }
    return a;
}

SparsePoly SymanzikDecomposition::reconstruct() const {
    int nv = nvars();
    SparsePoly sum_first(nv), sum_last(nv);  // both include the middle variable
    for (int v = 0; v <= m; ++v)
        sum_first = sum_first + SparsePoly::variable(nv, v);
    for (int v = m; v <= m + n; ++v)
        sum_last = sum_last + SparsePoly::variable(nv, v);
    // Each quadric multiplies the sum over the variables it does not use.
    SparsePoly out =
        (labeling == Labeling::first_block)
            ? Q * sum_last + Qprime * sum_first
            : Q * sum_first + Qprime * sum_last;
    return out + SparsePoly::variable(nv, m) * a_poly();
}

SymanzikDecomposition decompose(const SparsePoly& psi, int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("decompose: m, n must be >= 1");
    int nv = m + n + 1;
    if (psi.nvars() != nv)
        throw std::invalid_argument("decompose: polynomial must have m+n+1 variables");
    if (!psi.is_zero() && !(psi.is_homogeneous() && psi.total_degree() == 3))
        throw std::invalid_argument("decompose: polynomial must be a homogeneous cubic");
    SymanzikDecomposition d;
    d.m = m;
    d.n = n;
    d.labeling = Labeling::first_block;
    int mid = m;
    int first_ref = 0;       // reference variable for Q' coefficients
    int last_ref = m + n;    // reference variable for Q coefficients
    auto coeff3 = [&](int a, int b, int c) {
        ExpVec e(nv, 0);
        e[a] += 1;
        e[b] += 1;
        e[c] += 1;
        return psi.coefficient_of(e);
    };
    d.Q = SparsePoly(nv);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            Rat c = coeff3(i, j, last_ref);
            if (c == 0) continue;
            ExpVec e(nv, 0);
            e[i] += 1;
            e[j] += 1;
            d.Q.add_term(e, c);
        }
    d.Qprime = SparsePoly(nv);
    for (int i = m + 1; i <= m + n; ++i)
        for (int j = i; j <= m + n; ++j) {
            Rat c = coeff3(i, j, first_ref);
            if (c == 0) continue;
            ExpVec e(nv, 0);
            e[i] += 1;
            e[j] += 1;
            d.Qprime.add_term(e, c);
        }
    // A entries come from the monomials containing x_{m+1}, which no Q/Q'
    // product can produce; the slot pairing x_{m+1} with itself stays 0.
    d.A_matrix.assign(m + 1, std::vector<Rat>(n + 1, Rat(0)));
    for (int r = 0; r < m; ++r) d.A_matrix[r][0] = coeff3(r, mid, mid);
    for (int c = 1; c <= n; ++c) d.A_matrix[m][c] = coeff3(mid, mid, m + c);
    for (int r = 0; r < m; ++r)
        for (int c = 1; c <= n; ++c) d.A_matrix[r][c] = coeff3(r, mid, m + c);
    d.residual = psi - d.reconstruct();
    return d;
}

SymanzikDecomposition relabel_blocks(const SymanzikDecomposition& d) {
    if (d.m != 3 || d.n != 3)
        throw std::invalid_argument("relabel_blocks: requires an (3,1,3) decomposition");
    SymanzikDecomposition out = d;
    out.labeling = (d.labeling == Labeling::first_block) ? Labeling::last_block
                                                         : Labeling::first_block;
    out.Q = d.Qprime;
    out.Qprime = d.Q;
    return out;
}

}  // namespace dbx
