#pragma once

// Matrices of path-algebra elements: morphisms between finite direct sums
// of indecomposable projectives.
//
// Row convention: rows index the summands of the source, columns those of
// the target; the entry (r, c) is a combination of basis paths from the
// vertex of r to the vertex of c (Hom(P_u, P_w) = paths u -> w). The
// composite "F then G" is the product F * G, paths concatenated left to right.

#include <algorithm>
#include <type_traits>
#include <vector>

#include "siltlab/algebra.hpp"
#include "siltlab/linalg.hpp"

namespace siltlab {

template <class K>
struct PEntry {
  int col;
  int path;
  K c;
};

template <class K>
struct PathMatrix {
  std::vector<int> rows, cols;
  std::vector<std::vector<PEntry<K>>> e;

  PathMatrix() = default;
  PathMatrix(std::vector<int> r, std::vector<int> c) : rows(std::move(r)), cols(std::move(c)), e(rows.size()) {}

  int nrows() const { return static_cast<int>(rows.size()); }
  int ncols() const { return static_cast<int>(cols.size()); }

  static void normalize(std::vector<PEntry<K>>& row) {
    std::sort(row.begin(), row.end(),
              [](const PEntry<K>& a, const PEntry<K>& b) { return a.col != b.col ? a.col < b.col : a.path < b.path; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < row.size();) {
      std::size_t j = i + 1;
      K s = row[i].c;
      while (j < row.size() && row[j].col == row[i].col && row[j].path == row[i].path) s += row[j++].c;
      if (!is_zero(s)) row[w++] = PEntry<K>{row[i].col, row[i].path, s};
      i = j;
    }
    row.resize(w);
  }

  void add(int r, int c, int path, const K& x) {
    if (is_zero(x)) return;
    auto& row = e[r];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, path), [](const PEntry<K>& a, const auto& key) {
      return a.col != key.first ? a.col < key.first : a.path < key.second;
    });
    if (it != row.end() && it->col == c && it->path == path) {
      it->c += x;
      if (is_zero(it->c)) row.erase(it);
    } else {
      row.insert(it, PEntry<K>{c, path, x});
    }
  }

  K coef(int r, int c, int path) const {
    for (const auto& x : e[r])
      if (x.col == c && x.path == path) return x.c;
    return K(0);
  }

  bool is_zero_matrix() const {
    for (const auto& row : e)
      if (!row.empty()) return false;
    return true;
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& row : e) n += row.size();
    return n;
  }

  friend bool operator==(const PathMatrix& a, const PathMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t r = 0; r < a.e.size(); ++r) {
      if (a.e[r].size() != b.e[r].size()) return false;
      for (std::size_t k = 0; k < a.e[r].size(); ++k)
        if (a.e[r][k].col != b.e[r][k].col || a.e[r][k].path != b.e[r][k].path || a.e[r][k].c != b.e[r][k].c)
          return false;
    }
    return true;
  }

  static PathMatrix identity(const std::vector<int>& v) {
    PathMatrix m(v, v);
    for (std::size_t i = 0; i < v.size(); ++i) m.e[i].push_back(PEntry<K>{static_cast<int>(i), v[i], K(1)});
    return m;
  }
};

template <class K>
PathMatrix<K> mul(const PathMatrix<K>& f, const PathMatrix<K>& g, const PathAlgebra& alg) {
  PathMatrix<K> h(f.rows, g.cols);
  for (int r = 0; r < f.nrows(); ++r) {
    auto& out = h.e[r];
    for (const auto& a : f.e[r])
      for (const auto& b : g.e[a.col]) {
        K ab = a.c * b.c;
        for (const auto& [p, x] : alg.mul<K>(a.path, b.path)) out.push_back(PEntry<K>{b.col, p, ab * x});
      }
    PathMatrix<K>::normalize(out);
  }
  return h;
}

template <class K>
PathMatrix<K> add(const PathMatrix<K>& f, const PathMatrix<K>& g, const K& s = K(1)) {
  PathMatrix<K> h = f;
  for (int r = 0; r < g.nrows(); ++r) {
    for (const auto& b : g.e[r]) h.e[r].push_back(PEntry<K>{b.col, b.path, s * b.c});
    PathMatrix<K>::normalize(h.e[r]);
  }
  return h;
}

template <class K>
PathMatrix<K> scaled(PathMatrix<K> f, const K& s) {
  if (is_zero(s)) {
    for (auto& row : f.e) row.clear();
    return f;
  }
  for (auto& row : f.e)
    for (auto& x : row) x.c *= s;
  return f;
}

/// [F G]: same rows, columns concatenated.
template <class K>
PathMatrix<K> hstack(const PathMatrix<K>& f, const PathMatrix<K>& g) {
  std::vector<int> cols = f.cols;
  cols.insert(cols.end(), g.cols.begin(), g.cols.end());
  PathMatrix<K> h(f.rows, cols);
  for (int r = 0; r < f.nrows(); ++r) {
    h.e[r] = f.e[r];
    for (auto x : g.e[r]) {
      x.col += f.ncols();
      h.e[r].push_back(x);
    }
  }
  return h;
}

/// [F; G]: same columns, rows concatenated.
template <class K>
PathMatrix<K> vstack(const PathMatrix<K>& f, const PathMatrix<K>& g) {
  std::vector<int> rows = f.rows;
  rows.insert(rows.end(), g.rows.begin(), g.rows.end());
  PathMatrix<K> h(rows, f.cols);
  for (int r = 0; r < f.nrows(); ++r) h.e[r] = f.e[r];
  for (int r = 0; r < g.nrows(); ++r) h.e[f.nrows() + r] = g.e[r];
  return h;
}

template <class K>
PathMatrix<K> diag(const PathMatrix<K>& f, const PathMatrix<K>& g) {
  return vstack(hstack(f, PathMatrix<K>(f.rows, g.cols)), hstack(PathMatrix<K>(g.rows, f.cols), g));
}

/// Submatrix on the given row and column index lists (in that order).
template <class K>
PathMatrix<K> select(const PathMatrix<K>& f, const std::vector<int>& ri, const std::vector<int>& ci) {
  std::vector<int> where(f.ncols(), -1);
  std::vector<int> rows, cols;
  for (int r : ri) rows.push_back(f.rows[r]);
  for (std::size_t k = 0; k < ci.size(); ++k) {
    where[ci[k]] = static_cast<int>(k);
    cols.push_back(f.cols[ci[k]]);
  }
  PathMatrix<K> h(rows, cols);
  for (std::size_t k = 0; k < ri.size(); ++k) {
    for (const auto& x : f.e[ri[k]])
      if (where[x.col] >= 0) h.e[k].push_back(PEntry<K>{where[x.col], x.path, x.c});
    PathMatrix<K>::normalize(h.e[k]);
  }
  return h;
}

/// Scalar matrix (entries multiples of trivial paths); requires matching vertices where nonzero.
template <class K>
PathMatrix<K> scalar_matrix(const std::vector<int>& rows, const std::vector<int>& cols, const Mat<K>& m) {
  PathMatrix<K> h(rows, cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (!is_zero(m(r, c))) {
        if (rows[r] != cols[c]) throw InvalidInput("scalar entry between different vertices");
        h.e[r].push_back(PEntry<K>{c, rows[r], m(r, c)});
      }
  return h;
}

/// Coefficients of trivial paths (the map on tops).
template <class K>
Mat<K> top_matrix(const PathMatrix<K>& f, const PathAlgebra& alg) {
  Mat<K> m(f.nrows(), f.ncols());
  for (int r = 0; r < f.nrows(); ++r)
    for (const auto& x : f.e[r])
      if (alg.is_trivial(x.path)) m(r, x.col) = x.c;
  return m;
}

/// Map a matrix between scalar types entrywise (rational -> finite field reduction).
template <class K2, class K>
PathMatrix<K2> convert(const PathMatrix<K>& f) {
  PathMatrix<K2> h(f.rows, f.cols);
  for (int r = 0; r < f.nrows(); ++r) {
    for (const auto& x : f.e[r]) {
      if constexpr (std::is_same_v<K, Q>)
        h.e[r].push_back(PEntry<K2>{x.col, x.path, from_rational<K2>(x.c)});
      else
        h.e[r].push_back(PEntry<K2>{x.col, x.path, K2(x.c)});
    }
    PathMatrix<K2>::normalize(h.e[r]);
  }
  return h;
}

/// Inverse of a square map between sums of projectives whose top is invertible.
template <class K>
PathMatrix<K> invert_unit(const PathMatrix<K>& f, const PathAlgebra& alg) {
  auto t = inverse(top_matrix(f, alg));
  if (!t) throw LinearSolveFailure("map is not invertible on tops");
  PathMatrix<K> tinv = scalar_matrix(f.cols, f.rows, *t);
  // f * tinv = 1 + n with n radical (nilpotent); invert by a finite Neumann series.
  PathMatrix<K> id = PathMatrix<K>::identity(f.rows);
  PathMatrix<K> n = add(mul(f, tinv, alg), id, K(-1));
  PathMatrix<K> acc = id, power = id;
  for (int k = 0; k < 64 && !power.is_zero_matrix(); ++k) {
    power = scaled(mul(power, n, alg), K(-1));
    acc = add(acc, power);
  }
  if (!power.is_zero_matrix()) throw LinearSolveFailure("Neumann series did not terminate");
  return mul(tinv, acc, alg);
}

}  // namespace siltlab
