#pragma once

#include <vector>

#include "dbx/rational.hpp"

namespace dbx {

// Dense matrix over the exact rationals. Sized for certificate work
// (dimensions in the tens), not for large-scale numerics.
class RatMatrix {
public:
    RatMatrix(int rows, int cols);
    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    // Reduced row echelon form. Pivots are chosen among eligible entries by
    // smallest combined numerator/denominator bit length to contain
    // coefficient growth.
    RatMatrix rref(int* rank_out = nullptr) const;
    int rank() const;
    // Basis of the right null space {x : M x = 0}; vectors of length cols().
    std::vector<std::vector<Rat>> kernel_basis() const;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

// Rank of the span of the given vectors (rows of a matrix).
int rank_of_span(const std::vector<std::vector<Rat>>& vectors);

// Canonical (RREF) basis of the span; empty input or zero span gives {}.
std::vector<std::vector<Rat>> rref_basis(
    const std::vector<std::vector<Rat>>& vectors);

// Basis of span(a) ∩ span(b), returned in canonical RREF form.
std::vector<std::vector<Rat>> subspace_intersection(
    const std::vector<std::vector<Rat>>& a,
    const std::vector<std::vector<Rat>>& b);

}  // namespace dbx
