#include "dbx/linalg.hpp"

#include <stdexcept>

namespace dbx {

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("RatMatrix: negative dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Rat(0));
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("RatMatrix::from_rows: ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::rref(int* rank_out) const {
    RatMatrix m = *this;
    int r = 0;
    for (int col = 0; col < cols_ && r < rows_; ++col) {
        // Smallest-bit-length nonzero pivot in this column at or below row r.
        int pivot = -1;
        size_t best = 0;
        for (int i = r; i < rows_; ++i) {
            if (m.at(i, col) == 0) continue;
            size_t bits = rat_bits(m.at(i, col));
            if (pivot < 0 || bits < best) { pivot = i; best = bits; }
        }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Rat inv = 1 / m.at(r, col);
        for (int j = col; j < cols_; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    if (rank_out) *rank_out = r;
    return m;
}

int RatMatrix::rank() const {
    int r = 0;
    rref(&r);
    return r;
}

std::vector<std::vector<Rat>> RatMatrix::kernel_basis() const {
    int r = 0;
    RatMatrix e = rref(&r);
    // Locate pivot columns.
    std::vector<int> pivot_col(r, -1);
    std::vector<bool> is_pivot(cols_, false);
    for (int i = 0, col = 0; i < r; ++i) {
        while (col < cols_ && e.at(i, col) == 0) ++col;
        pivot_col[i] = col;
        if (col < cols_) is_pivot[col] = true;
    }
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols_, Rat(0));
        v[free] = 1;
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = -e.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank_of_span(const std::vector<std::vector<Rat>>& vectors) {
    if (vectors.empty()) return 0;
    return RatMatrix::from_rows(vectors).rank();
}

std::vector<std::vector<Rat>> rref_basis(
    const std::vector<std::vector<Rat>>& vectors) {
    if (vectors.empty()) return {};
    int r = 0;
    RatMatrix e = RatMatrix::from_rows(vectors).rref(&r);
    std::vector<std::vector<Rat>> basis;
    for (int i = 0; i < r; ++i) {
        std::vector<Rat> v(e.cols());
        for (int j = 0; j < e.cols(); ++j) v[j] = e.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Rat>> subspace_intersection(
    const std::vector<std::vector<Rat>>& a,
    const std::vector<std::vector<Rat>>& b) {
    if (a.empty() || b.empty()) return {};
    size_t n = a[0].size();
    for (const auto& v : a)
        if (v.size() != n) throw std::invalid_argument("subspace_intersection: ragged input");
    for (const auto& v : b)
        if (v.size() != n) throw std::invalid_argument("subspace_intersection: ragged input");
    int ka = static_cast<int>(a.size()), kb = static_cast<int>(b.size());
    // Solve sum_i s_i a_i = sum_j t_j b_j: kernel of the n×(ka+kb) matrix
    // whose columns are the a_i and -b_j.
    RatMatrix m(static_cast<int>(n), ka + kb);
    for (int j = 0; j < ka; ++j)
        for (size_t i = 0; i < n; ++i) m.at(static_cast<int>(i), j) = a[j][i];
    for (int j = 0; j < kb; ++j)
        for (size_t i = 0; i < n; ++i)
            m.at(static_cast<int>(i), ka + j) = -b[j][i];
    std::vector<std::vector<Rat>> meet;
    for (const auto& st : m.kernel_basis()) {
        std::vector<Rat> v(n, Rat(0));
        for (int j = 0; j < ka; ++j)
            for (size_t i = 0; i < n; ++i) v[i] += st[j] * a[j][i];
        meet.push_back(std::move(v));
    }
    return rref_basis(meet);
}

}  // namespace dbx
