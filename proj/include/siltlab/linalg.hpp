#pragma once

// Exact linear algebra over a scalar type K: sparse vectors, an incremental
// row-echelon reducer (rank, span membership, nullspaces, coordinates), and
// a small dense matrix type for module structure maps.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "siltlab/field.hpp"

namespace siltlab {

/// Sparse vector: (index, value) pairs sorted by index, no stored zeros.
template <class K>
using SVec = std::vector<std::pair<int, K>>;

/// y += a * x
template <class K>
void axpy(SVec<K>& y, const K& a, const SVec<K>& x) {
  if (is_zero(a) || x.empty()) return;
  SVec<K> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      K s = y[i].second + a * x[j].second;
      if (!is_zero(s)) out.emplace_back(y[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

template <class K>
void scale(SVec<K>& v, const K& a) {
  if (is_zero(a)) {
    v.clear();
    return;
  }
  for (auto& [i, x] : v) x *= a;
}

/// Build a sparse vector from unsorted (index, value) contributions, summing duplicates.
template <class K>
SVec<K> collect(std::vector<std::pair<int, K>> raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SVec<K> out;
  for (auto& [i, x] : raw) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += x;
    } else {
      if (!out.empty() && is_zero(out.back().second)) out.pop_back();
      out.emplace_back(i, std::move(x));
    }
  }
  if (!out.empty() && is_zero(out.back().second)) out.pop_back();
  return out;
}

template <class K>
K coeff(const SVec<K>& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& e, int i) { return e.first < i; });
  if (it != v.end() && it->first == idx) return it->second;
  return K(0);
}

/// Incremental reduced row echelon form. Rows are normalised so that the
/// pivot (leading) entry is 1 and no stored row has a nonzero entry in the
/// pivot column of another row inserted earlier. With tracking enabled,
/// every stored row remembers its expression in terms of the inserted
/// vectors (numbered by insertion order).
template <class K>
class Echelon {
 public:
  explicit Echelon(int ncols, bool track = false) : n_(ncols), track_(track), pivot_row_(ncols, -1) {}

  int ncols() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  int inserted() const { return inserted_; }

  /// Remainder of v after elimination against the stored rows.
  SVec<K> reduce(SVec<K> v) const {
    SVec<K> dummy;
    reduce_impl(v, dummy, false);
    return v;
  }

  bool in_span(const SVec<K>& v) const { return reduce(v).empty(); }

  /// Insert v; returns true when the rank grew.
  bool insert(SVec<K> v) {
    SVec<K> combo;
    if (track_) combo.emplace_back(inserted_, K(1));
    ++inserted_;
    reduce_impl(v, combo, track_);
    if (v.empty()) {
      if (track_) dependencies_.push_back(std::move(combo));
      return false;
    }
    K lead_inv = inv(v.front().second);
    scale(v, lead_inv);
    if (track_) scale(combo, lead_inv);
    pivot_row_[v.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    if (track_) combos_.push_back(std::move(combo));
    return true;
  }

  /// Coefficients c (over insertion ids) with sum c_i * inserted_i == v, if v is in the span.
  std::optional<SVec<K>> represent(SVec<K> v) const {
    assert(track_);
    SVec<K> combo;
    reduce_impl(v, combo, true);
    if (!v.empty()) return std::nullopt;
    scale(combo, K(-1));
    return combo;
  }

  /// For dependent insertions (insert returned false), the recorded relation:
  /// a combination of insertion ids that vanishes.
  const std::vector<SVec<K>>& dependencies() const { return dependencies_; }

  const std::vector<SVec<K>>& rows() const { return rows_; }

  std::vector<int> pivots() const {
    std::vector<int> p;
    for (const auto& r : rows_) p.push_back(r.front().first);
    return p;
  }

  bool is_pivot(int col) const { return pivot_row_[col] >= 0; }

  /// Basis of {x : r . x = 0 for every stored row r}.
  std::vector<SVec<K>> nullspace() const {
    std::vector<SVec<K>> full = reduced_rows();
    std::vector<std::vector<std::pair<int, K>>> raw(n_);
    std::vector<char> free(n_, 1);
    for (const auto& r : full) free[r.front().first] = 0;
    for (const auto& r : full) {
      int p = r.front().first;
      for (std::size_t k = 1; k < r.size(); ++k) raw[r[k].first].emplace_back(p, -r[k].second);
    }
    std::vector<SVec<K>> basis;
    for (int c = 0; c < n_; ++c) {
      if (!free[c]) continue;
      auto contrib = std::move(raw[c]);
      contrib.emplace_back(c, K(1));
      basis.push_back(collect<K>(std::move(contrib)));
    }
    return basis;
  }

  /// Fully reduced rows (no row has an entry in another row's pivot column).
  std::vector<SVec<K>> reduced_rows() const {
    std::vector<int> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rows_[a].front().first > rows_[b].front().first; });
    std::vector<SVec<K>> out(rows_.size());
    std::vector<int> done_row(n_, -1);
    for (int idx : order) {
      SVec<K> r = rows_[idx];
      std::size_t i = 1;
      while (i < r.size()) {
        int c = r[i].first;
        if (done_row[c] >= 0) {
          K a = -r[i].second;
          axpy(r, a, out[done_row[c]]);
        } else {
          ++i;
        }
      }
      done_row[r.front().first] = idx;
      out[idx] = std::move(r);
    }
    return out;
  }

 private:
  void reduce_impl(SVec<K>& v, SVec<K>& combo, bool track) const {
    std::size_t i = 0;
    while (i < v.size()) {
      int c = v[i].first;
      int r = pivot_row_[c];
      if (r >= 0) {
        K a = -v[i].second;
        axpy(v, a, rows_[r]);
        if (track) axpy(combo, a, combos_[r]);
      } else {
        ++i;
      }
    }
  }

  int n_;
  bool track_;
  int inserted_ = 0;
  std::vector<int> pivot_row_;
  std::vector<SVec<K>> rows_;
  std::vector<SVec<K>> combos_;
  std::vector<SVec<K>> dependencies_;
};

/// Dense row-major matrix.
template <class K>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, K(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  K& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const K& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  bool is_zero_matrix() const {
    for (const auto& x : a)
      if (!siltlab::is_zero(x)) return false;
    return true;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    assert(x.cols == y.rows);
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const K& xik = x(i, k);
        if (siltlab::is_zero(xik)) continue;
        for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
      }
    return z;
  }
  friend Mat operator+(Mat x, const Mat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
  }
  friend Mat operator-(Mat x, const Mat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  SVec<K> row_sparse(int i) const {
    SVec<K> v;
    for (int j = 0; j < cols; ++j)
      if (!siltlab::is_zero((*this)(i, j))) v.emplace_back(j, (*this)(i, j));
    return v;
  }
  SVec<K> col_sparse(int j) const {
    SVec<K> v;
    for (int i = 0; i < rows; ++i)
      if (!siltlab::is_zero((*this)(i, j))) v.emplace_back(i, (*this)(i, j));
    return v;
  }
};

template <class K>
int rank(const Mat<K>& m) {
  Echelon<K> e(m.cols);
  for (int i = 0; i < m.rows; ++i) e.insert(m.row_sparse(i));
  return e.rank();
}

/// Basis (as columns of the result) of {x : m x = 0}.
template <class K>
Mat<K> kernel(const Mat<K>& m) {
  Echelon<K> e(m.cols);
  for (int i = 0; i < m.rows; ++i) e.insert(m.row_sparse(i));
  auto ns = e.nullspace();
  Mat<K> out(m.cols, static_cast<int>(ns.size()));
  for (std::size_t j = 0; j < ns.size(); ++j)
    for (auto& [i, x] : ns[j]) out(i, static_cast<int>(j)) = x;
  return out;
}

/// Columns of m forming a basis of its column space, chosen greedily left to right.
template <class K>
Mat<K> column_basis(const Mat<K>& m) {
  Echelon<K> e(m.rows);
  std::vector<int> keep;
  for (int j = 0; j < m.cols; ++j)
    if (e.insert(m.col_sparse(j))) keep.push_back(j);
  Mat<K> out(m.rows, static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (int i = 0; i < m.rows; ++i) out(i, static_cast<int>(c)) = m(i, keep[c]);
  return out;
}

/// Inverse of a square matrix; nullopt when singular.
template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
  const int n = m.rows;
  Mat<K> w = m;
  Mat<K> r = Mat<K>::identity(n);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(w(i, c))) {
        p = i;
        break;
      }
    if (p < 0) return std::nullopt;
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(w(p, j), w(c, j));
        std::swap(r(p, j), r(c, j));
      }
    K s = inv(w(c, c));
    for (int j = 0; j < n; ++j) {
      w(c, j) *= s;
      r(c, j) *= s;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || is_zero(w(i, c))) continue;
      K f = w(i, c);
      for (int j = 0; j < n; ++j) {
        w(i, j) -= f * w(c, j);
        r(i, j) -= f * r(c, j);
      }
    }
  }
  return r;
}

/// Solve x m = b style problems are expressed by callers through Echelon; this
/// helper returns a matrix whose columns extend the columns of `basis` (assumed
/// independent) to a basis of the ambient space using standard vectors.
template <class K>
Mat<K> complete_basis(const Mat<K>& basis) {
  Echelon<K> e(basis.rows);
  for (int j = 0; j < basis.cols; ++j) e.insert(basis.col_sparse(j));
  Mat<K> out(basis.rows, basis.rows);
  int c = 0;
  for (int j = 0; j < basis.cols; ++j, ++c)
    for (int i = 0; i < basis.rows; ++i) out(i, c) = basis(i, j);
  for (int i = 0; i < basis.rows && c < basis.rows; ++i) {
    SVec<K> ei{{i, K(1)}};
    if (e.insert(ei)) out(i, c++) = K(1);
  }
  return out;
}

}  // namespace siltlab
