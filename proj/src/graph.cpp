#include "dbx/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dbx {

namespace {

// Minimal union-find over arbitrary vertex ids.
class UnionFind {
public:
    explicit UnionFind(const std::vector<int>& ids) {
        for (int v : ids) parent_[v] = v;
    }
    int find(int v) {
        int r = v;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[v] != r) { int next = parent_[v]; parent_[v] = r; v = next; }
        return r;
    }
    // Returns false if a and b were already connected (a cycle would form).
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent_[ra] = rb;
        return true;
    }

private:
    std::map<int, int> parent_;
};

}  // namespace

int TwoLoopGraph::nvars() const {
    int n = 0;
    for (const auto& e : edges) n = std::max(n, e.id);
    return n;
}

int TwoLoopGraph::component_count() const {
    UnionFind uf(vertices);
    int components = static_cast<int>(vertices.size());
    for (const auto& e : edges)
        if (uf.unite(e.a, e.b)) --components;
    return components;
}

int TwoLoopGraph::loop_number() const {
    return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) +
           component_count();
}

bool TwoLoopGraph::is_connected() const { return component_count() == 1; }

const Edge& TwoLoopGraph::edge_by_id(int id) const {
    for (const auto& e : edges)
        if (e.id == id) return e;
    throw std::invalid_argument("unknown edge id " + std::to_string(id));
}

TwoLoopGraph build_family_graph(int m, int b, int n) {
    if (m < 1 || b < 1 || n < 1)
        throw std::invalid_argument("build_family_graph: strand lengths must be >= 1");
    TwoLoopGraph g;
    int vertex_count = m + b + n - 1;
    g.vertices.resize(vertex_count);
    std::iota(g.vertices.begin(), g.vertices.end(), 1);
    int next_vertex = 3;  // 1 and 2 are the junctions
    int next_edge = 1;
    auto add_strand = [&](int length) {
        int prev = 1;
        for (int k = 1; k < length; ++k) {
            g.edges.push_back({next_edge++, prev, next_vertex});
            prev = next_vertex++;
        }
        g.edges.push_back({next_edge++, prev, 2});
    };
    add_strand(m);
    add_strand(b);
    add_strand(n);
    g.family = std::array<int, 3>{m, b, n};
    return g;
}

CutResult cut_classify(const TwoLoopGraph& g, const std::vector<int>& removed) {
    for (int id : removed) g.edge_by_id(id);  // validate ids
    auto is_removed = [&](int id) {
        return std::find(removed.begin(), removed.end(), id) != removed.end();
    };
    UnionFind uf(g.vertices);
    int components = static_cast<int>(g.vertices.size());
    bool acyclic = true;
    for (const auto& e : g.edges) {
        if (is_removed(e.id)) continue;
        if (uf.unite(e.a, e.b)) --components;
        else acyclic = false;  // edge closed a cycle
    }
    CutResult r;
    r.removed_edges = removed;
    std::sort(r.removed_edges.begin(), r.removed_edges.end());
    r.component_count = components;
    r.is_forest = acyclic;
    std::map<int, std::vector<int>> groups;
    for (int v : g.vertices) groups[uf.find(v)].push_back(v);
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        r.component_vertex_sets.push_back(members);
    }
    std::sort(r.component_vertex_sets.begin(), r.component_vertex_sets.end());
    return r;
}

SparsePoly first_symanzik_enumerative(const TwoLoopGraph& g) {
    if (!g.is_connected())
        throw std::invalid_argument("first_symanzik_enumerative: disconnected graph");
    if (g.loop_number() != 2)
        throw std::invalid_argument("first_symanzik_enumerative: loop number must be 2");
    int nv = g.nvars();
    SparsePoly phi(nv);
    for (size_t i = 0; i < g.edges.size(); ++i) {
        for (size_t j = i + 1; j < g.edges.size(); ++j) {
            int ei = g.edges[i].id, ej = g.edges[j].id;
            if (!cut_classify(g, {ei, ej}).is_spanning_tree()) continue;
            ExpVec e(nv, 0);
            e[ei - 1] = 1;
            e[ej - 1] = 1;
            phi.add_term(e, Rat(1));
        }
    }
    return phi;
}

SparsePoly first_symanzik_matrix_tree(const TwoLoopGraph& g) {
    if (!g.is_connected())
        throw std::invalid_argument("first_symanzik_matrix_tree: disconnected graph");
    int nv = g.nvars();
    // Spanning tree by repeated union; the remaining edges index the
    // fundamental cycles.
    UnionFind uf(g.vertices);
    std::vector<Edge> tree, extra;
    for (const auto& e : g.edges) {
        if (e.a != e.b && uf.unite(e.a, e.b)) tree.push_back(e);
        else extra.push_back(e);
    }
    int loops = static_cast<int>(extra.size());
    if (loops == 0) return SparsePoly::constant(std::max(nv, 0), Rat(1));
    // Signed incidence of every edge with each fundamental cycle. The cycle of
    // a non-tree edge e = (a,b) is e followed by the tree path from b back
    // to a; tree edges pick up +1/-1 according to traversal direction.
    std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (to, edge idx in tree)
    for (size_t t = 0; t < tree.size(); ++t) {
        adj[tree[t].a].push_back({tree[t].b, static_cast<int>(t)});
        adj[tree[t].b].push_back({tree[t].a, static_cast<int>(t)});
    }
    // Tree path between two vertices by DFS; returns signed tree-edge list.
    auto tree_path = [&](int from, int to) {
        std::vector<std::pair<int, int>> path;  // (tree idx, sign)
        std::map<int, std::pair<int, int>> prev;  // vertex -> (tree idx, sign into vertex)
        std::vector<int> stack{from};
        std::map<int, bool> seen{{from, true}};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v == to) break;
            for (auto [w, t] : adj[v]) {
                if (seen[w]) continue;
                seen[w] = true;
                // sign +1 when traversing the tree edge along its own a->b direction
                prev[w] = {t, tree[t].a == v ? +1 : -1};
                stack.push_back(w);
            }
        }
        for (int v = to; v != from;) {
            auto [t, sign] = prev.at(v);
            path.push_back({t, sign});
            v = (sign > 0) ? tree[t].a : tree[t].b;
        }
        return path;
    };
    // incidence[edge id] per cycle
    std::vector<std::map<int, int>> incidence(loops);
    for (int c = 0; c < loops; ++c) {
        const Edge& e = extra[c];
        incidence[c][e.id] += 1;
        if (e.a != e.b)
            for (auto [t, sign] : tree_path(e.b, e.a)) incidence[c][tree[t].id] += sign;
    }
    // Loop matrix: L[k][l] = sum_e x_e * inc(e,k) * inc(e,l); its determinant
    // is the spanning-tree-complement polynomial.
    SparsePoly zero(nv);
    std::vector<std::vector<SparsePoly>> L(loops, std::vector<SparsePoly>(loops, zero));
    for (int k = 0; k < loops; ++k) {
        for (int l = 0; l < loops; ++l) {
            SparsePoly entry(nv);
            for (const auto& e : g.edges) {
                auto ik = incidence[k].find(e.id);
                auto il = incidence[l].find(e.id);
                if (ik == incidence[k].end() || il == incidence[l].end()) continue;
                int w = ik->second * il->second;
                if (w == 0) continue;
                ExpVec exp(nv, 0);
                exp[e.id - 1] = 1;
                entry.add_term(exp, Rat(w));
            }
            L[k][l] = entry;
        }
    }
    return poly_determinant(L);
}

std::vector<TwoForestCut> two_forest_cuts(const TwoLoopGraph& g) {
    if (!g.is_connected())
        throw std::invalid_argument("two_forest_cuts: disconnected graph");
    if (g.loop_number() != 2)
        throw std::invalid_argument("two_forest_cuts: loop number must be 2");
    std::vector<TwoForestCut> cuts;
    size_t ne = g.edges.size();
    for (size_t i = 0; i < ne; ++i)
        for (size_t j = i + 1; j < ne; ++j)
            for (size_t k = j + 1; k < ne; ++k) {
                CutResult r = cut_classify(
                    g, {g.edges[i].id, g.edges[j].id, g.edges[k].id});
                if (!r.is_two_forest()) continue;
                cuts.push_back({{g.edges[i].id, g.edges[j].id, g.edges[k].id},
                                r.component_vertex_sets});
            }
    return cuts;
}

bool is_self_loop(const TwoLoopGraph& g, int edge_id) {
    const Edge& e = g.edge_by_id(edge_id);
    return e.a == e.b;
}

bool is_bridge(const TwoLoopGraph& g, int edge_id) {
    if (is_self_loop(g, edge_id)) return false;
    return delete_edge(g, edge_id).component_count() > g.component_count();
}

TwoLoopGraph contract_edge(const TwoLoopGraph& g, int edge_id) {
    const Edge& e = g.edge_by_id(edge_id);
    if (e.a == e.b)
        throw std::invalid_argument("contract_edge: cannot contract a self-loop");
    int keep = std::min(e.a, e.b), drop = std::max(e.a, e.b);
    TwoLoopGraph out;
    for (int v : g.vertices)
        if (v != drop) out.vertices.push_back(v);
    for (const auto& f : g.edges) {
        if (f.id == edge_id) continue;
        Edge h = f;
        if (h.a == drop) h.a = keep;
        if (h.b == drop) h.b = keep;
        out.edges.push_back(h);
    }
    return out;
}

TwoLoopGraph delete_edge(const TwoLoopGraph& g, int edge_id) {
    g.edge_by_id(edge_id);
    TwoLoopGraph out;
    out.vertices = g.vertices;
    for (const auto& f : g.edges)
        if (f.id != edge_id) out.edges.push_back(f);
    return out;
}

}  // namespace dbx
