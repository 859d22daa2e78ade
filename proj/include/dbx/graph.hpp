#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dbx/poly.hpp"

namespace dbx {

struct Edge {
    int id;  // 1-based; edge id e owns polynomial variable index e-1
    int a;
    int b;
};

// Connected multigraph, primarily the (m,b,n) two-loop family: two trivalent
// junction vertices joined by three strands of m, b, and n edges. Minors
// (contractions/deletions) keep their original edge ids, so polynomials of a
// graph and its minors live in one variable space.
struct TwoLoopGraph {
    std::vector<int> vertices;               // ascending ids
    std::vector<Edge> edges;                 // ascending ids
    std::optional<std::array<int, 3>> family;  // (m, b, n) if built as such

    int nvars() const;        // max edge id
    int loop_number() const;  // edges - vertices + components
    int component_count() const;
    bool is_connected() const;
    const Edge& edge_by_id(int id) const;
};

// Labeling convention: junctions are vertices 1 and 2; subdivision vertices
// are numbered consecutively along the first strand (from junction 1 to 2),
// then the middle strand, then the last strand. Edges are numbered the same
// way: 1..m on the first strand, m+1..m+b on the middle, m+b+1..m+b+n on the
// last. For b = 1 this gives the usual x_1..x_m / x_{m+1} / x_{m+2}..x_{m+n+1}
// block layout.
TwoLoopGraph build_family_graph(int m, int b, int n);

struct CutResult {
    std::vector<int> removed_edges;
    int component_count = 0;
    std::vector<std::vector<int>> component_vertex_sets;  // sorted partition
    bool is_forest = false;
    bool is_spanning_tree() const { return component_count == 1 && is_forest; }
    bool is_two_forest() const { return component_count == 2 && is_forest; }
};

CutResult cut_classify(const TwoLoopGraph& g, const std::vector<int>& removed);

// First Symanzik polynomial: sum of x_i x_j over edge pairs whose removal
// leaves a spanning tree. Requires loop number 2.
SparsePoly first_symanzik_enumerative(const TwoLoopGraph& g);

// Independent construction of the same polynomial: determinant of the
// loop-momentum matrix built from fundamental cycles (dual-weight form of the
// matrix-tree theorem). Works for any connected multigraph; degree equals the
// loop number, with the empty product convention for trees.
SparsePoly first_symanzik_matrix_tree(const TwoLoopGraph& g);

struct TwoForestCut {
    std::array<int, 3> triple;                 // ascending edge ids
    std::vector<std::vector<int>> bipartition;  // the two vertex sets
};

// All edge triples whose removal leaves a spanning 2-forest.
std::vector<TwoForestCut> two_forest_cuts(const TwoLoopGraph& g);

bool is_self_loop(const TwoLoopGraph& g, int edge_id);
bool is_bridge(const TwoLoopGraph& g, int edge_id);
TwoLoopGraph contract_edge(const TwoLoopGraph& g, int edge_id);
TwoLoopGraph delete_edge(const TwoLoopGraph& g, int edge_id);

}  // namespace dbx
