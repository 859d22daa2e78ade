#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "dbx/graph.hpp"
#include "dbx/poly.hpp"

namespace dbx {

// Momenta and masses attached to a graph instance. Momentum conservation
// (componentwise zero sum over all vertices) holds by construction for
// sampled data and is an invariant of the type.
struct KinematicData {
    int D = 4;
    std::vector<int> signature;            // length D, entries +1 / -1
    std::map<int, std::vector<Rat>> momenta;  // vertex id -> D-vector
    std::map<int, Rat> masses2;               // edge id -> squared mass
    uint64_t seed = 0;
    bool known_nongeneric = false;  // D = 1 data can never be generic
};

// Deterministic sampling: rationals with numerators in [-10^4, 10^4] and
// denominators in [1, 100]; masses are sampled in that range and squared.
// The last vertex takes minus the sum of the others.
KinematicData sample_kinematics(const TwoLoopGraph& g, int D,
                                const std::vector<int>& signature,
                                uint64_t seed);

// Convenience: all-plus signature of length D.
std::vector<int> euclidean_signature(int D);

// Squared momentum flow (under the signature) across a 2-forest cut; the
// value does not depend on which of the two components is summed.
Rat cut_coefficient(const TwoLoopGraph& g, const KinematicData& kin,
                    const std::array<int, 3>& triple);

// Second Symanzik polynomial: sum of cut_coefficient * x_i x_j x_k over the
// 2-forest triples.
SparsePoly second_symanzik(const TwoLoopGraph& g, const KinematicData& kin);

// Massive second Symanzik: (sum_i m_i^2 x_i) * phi + psi.
SparsePoly massive_second_symanzik(const TwoLoopGraph& g,
                                   const KinematicData& kin);

// Which block carries the quadric named Q. first_block: Q on x_1..x_m
// (the convention the decomposition is extracted in); last_block: Q on
// x_{m+2}..x_{m+n+1} with Q' on the first block (the convention the singular-
// locus and certificate code expects for (3,1,3)).
enum class Labeling { first_block, last_block };

// Block decomposition of the massive second Symanzik of an (m,1,n) graph:
//   Psi = Q * (sum over middle+other block) + Q' * (sum over middle+other
//   block) + x_{m+1} * A,
// where A is bilinear in (x_1..x_{m+1}) x (x_{m+1}..x_{m+n+1}) with a zero
// entry in the slot pairing x_{m+1} with itself. The residual records the
// exact mismatch for inputs not of this shape.
struct SymanzikDecomposition {
    int m = 0, n = 0;
    Labeling labeling = Labeling::first_block;
    SparsePoly Q;
    SparsePoly Qprime;
    std::vector<std::vector<Rat>> A_matrix;  // (m+1) x (n+1)
    SparsePoly residual;

    int nvars() const { return m + n + 1; }
    int middle_var() const { return m; }  // 0-based index of x_{m+1}
    std::vector<int> q_block() const;      // variables carrying Q
    std::vector<int> qprime_block() const;
    SparsePoly a_poly() const;       // A as a polynomial
    SparsePoly reconstruct() const;  // decomposition without the residual
};

// Coefficient-matching extraction. Normalization: the Q coefficient of
// x_i x_j is read off against the last variable, the Q' coefficient against
// the first, and A entries from the unique monomials containing x_{m+1};
// any inconsistency lands in the residual (returned, never thrown).
SymanzikDecomposition decompose(const SparsePoly& psi, int m, int n);

// Swap which block is called Q (involution); requires m = n = 3.
SymanzikDecomposition relabel_blocks(const SymanzikDecomposition& d);

}  // namespace dbx
