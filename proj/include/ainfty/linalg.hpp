#pragma once

#include "field.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ainfty {

struct NotContained : std::runtime_error {
    NotContained() : std::runtime_error("subspace is not contained in the ambient span") {}
};

/// Sparse column/row vector: index -> nonzero scalar.
template <class K>
using SparseVec = std::map<int, K>;

template <class K>
void vec_add_scaled(SparseVec<K>& dst, const SparseVec<K>& src, const K& c) {
    if (scalar_is_zero(c)) return;
    for (const auto& [i, v] : src) {
        auto it = dst.find(i);
        if (it == dst.end()) {
            K w = v * c;
            if (!scalar_is_zero(w)) dst.emplace(i, w);
        } else {
            it->second += v * c;
            if (scalar_is_zero(it->second)) dst.erase(it);
        }
    }
}

template <class K>
SparseVec<K> vec_scaled(const SparseVec<K>& v, const K& c) {
    SparseVec<K> out;
    vec_add_scaled(out, v, c);
    return out;
}

/// Sparse exact matrix, stored row-major with no explicit zeros.
template <class K>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const K& v) {
        if (scalar_is_zero(v))
            data_[r].erase(c);
        else
            data_[r][c] = v;
    }
    void add(int r, int c, const K& v) {
        auto it = data_[r].find(c);
        if (it == data_[r].end()) {
            if (!scalar_is_zero(v)) data_[r].emplace(c, v);
        } else {
            it->second += v;
            if (scalar_is_zero(it->second)) data_[r].erase(it);
        }
    }
    std::optional<K> get(int r, int c) const {
        auto it = data_[r].find(c);
        if (it == data_[r].end()) return std::nullopt;
        return it->second;
    }
    const SparseVec<K>& row(int r) const { return data_[r]; }
    SparseVec<K>& row_mut(int r) { return data_[r]; }

    void append_row(SparseVec<K> r) {
        data_.push_back(std::move(r));
        ++rows_;
    }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    /// dst = this * v (v indexed by columns).
    SparseVec<K> apply(const SparseVec<K>& v) const {
        SparseVec<K> out;
        for (int r = 0; r < rows_; ++r) {
            auto acc = std::optional<K>();
            for (const auto& [c, a] : data_[r]) {
                auto it = v.find(c);
                if (it == v.end()) continue;
                K t = a * it->second;
                if (acc)
                    *acc += t;
                else
                    acc = t;
            }
            if (acc && !scalar_is_zero(*acc)) out.emplace(r, *acc);
        }
        return out;
    }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) out.set(c, r, v);
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    int rows_, cols_;
    std::vector<SparseVec<K>> data_;
};

/// Reduced row echelon form together with the sorted pivot columns.
/// Deterministic: columns are scanned left to right and the first remaining
/// row with a nonzero entry becomes the pivot row (no magnitude heuristics).
template <class K>
std::pair<Matrix<K>, std::vector<int>> rref(const Matrix<K>& m) {
    Matrix<K> a = m;
    std::vector<int> pivots;
    int next_row = 0;
    for (int col = 0; col < a.cols() && next_row < a.rows(); ++col) {
        int pr = -1;
        for (int r = next_row; r < a.rows(); ++r)
            if (a.get(r, col)) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(a.row_mut(pr), a.row_mut(next_row));
        K inv = scalar_inverse(*a.get(next_row, col));
        a.row_mut(next_row) = vec_scaled(a.row(next_row), inv);
        for (int r = 0; r < a.rows(); ++r) {
            if (r == next_row) continue;
            auto e = a.get(r, col);
            if (!e) continue;
            vec_add_scaled(a.row_mut(r), a.row(next_row), -*e);
        }
        pivots.push_back(col);
        ++next_row;
    }
    return {std::move(a), std::move(pivots)};
}

/// Canonical particular solution of a x = b: zero in every non-pivot
/// coordinate.  std::nullopt signals an inconsistent system.
template <class K>
std::optional<SparseVec<K>> solve(const Matrix<K>& a, const SparseVec<K>& b) {
    Matrix<K> aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        aug.row_mut(r) = a.row(r);
        auto it = b.find(r);
        if (it != b.end()) aug.set(r, a.cols(), it->second);
    }
    auto [e, piv] = rref(aug);
    SparseVec<K> x;
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == a.cols()) return std::nullopt;
        auto v = e.get(static_cast<int>(i), a.cols());
        if (v) x.emplace(piv[i], *v);
    }
    return x;
}

/// Echelon-normalized basis of the null space, ordered by free-column index.
template <class K>
std::vector<SparseVec<K>> kernel_basis(const Matrix<K>& a, const Field<K>& f) {
    auto [e, piv] = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<SparseVec<K>> out;
    for (int c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        SparseVec<K> v;
        v.emplace(c, f.one());
        for (std::size_t i = 0; i < piv.size(); ++i) {
            auto w = e.get(static_cast<int>(i), c);
            if (w) v.emplace(piv[i], -*w);
        }
        out.push_back(std::move(v));
    }
    return out;
}

template <class K>
Matrix<K> rows_to_matrix(const std::vector<SparseVec<K>>& rows, int cols) {
    Matrix<K> m(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row_mut(static_cast<int>(i)) = rows[i];
    return m;
}

/// Row-span helper with echelon rows; used for membership and quotients.
template <class K>
class Span {
  public:
    Span() : cols_(0) {}
    explicit Span(int cols) : cols_(cols) {}
    Span(const std::vector<SparseVec<K>>& vectors, int cols) : cols_(cols) {
        auto [e, piv] = rref(rows_to_matrix(vectors, cols));
        for (std::size_t i = 0; i < piv.size(); ++i) {
            rows_.push_back(e.row(static_cast<int>(i)));
            pivots_.push_back(piv[i]);
        }
    }

    int dim() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    const std::vector<SparseVec<K>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    /// Reduce v against the echelon rows (clear the pivot coordinates).
    SparseVec<K> reduce(SparseVec<K> v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            auto it = v.find(pivots_[i]);
            if (it == v.end()) continue;
            vec_add_scaled(v, rows_[i], -it->second);
        }
        return v;
    }
    bool contains(const SparseVec<K>& v) const { return reduce(v).empty(); }
    bool contains(const Span& other) const {
        for (const auto& r : other.rows_)
            if (!contains(r)) return false;
        return true;
    }
    bool operator==(const Span& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

  private:
    int cols_;
    std::vector<SparseVec<K>> rows_;
    std::vector<int> pivots_;
};

/// Representatives of ambient/sub, each reduced against sub's echelon basis.
template <class K>
std::vector<SparseVec<K>> subquotient_basis(const Span<K>& sub, const Span<K>& ambient) {
    if (sub.cols() != ambient.cols()) throw std::invalid_argument("subquotient: column counts differ");
    if (!ambient.contains(sub)) throw NotContained();
    std::vector<SparseVec<K>> cand;
    for (const auto& r : ambient.rows()) {
        auto red = sub.reduce(r);
        if (!red.empty()) cand.push_back(std::move(red));
    }
    Span<K> reps(cand, ambient.cols());
    return reps.rows();
}

}  // namespace ainfty
