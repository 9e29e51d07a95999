#pragma once

// Bounded complexes of finitely generated projectives, chain maps and the
// homotopy category. Two-term complexes P^{-1} -> P^0 are the case lo = -1
// with two terms; wider windows appear only as intermediate objects
// (contractible padding, cones).
//
// Sign conventions (row notation, "f then g" = f*g):
//   chain map        d_X^k f^{k+1} = f^k d_Y^k
//   homotopy         f^k = d_X^k h^{k+1} + h^k d_Y^{k-1}
//   shift            X[n]^k = X^{k+n}, d_{X[n]} = (-1)^n d_X
//   cone(f: X->Y)    C^k = X^{k+1} + Y^k, d = [[-d_X, f], [0, d_Y]]

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "siltlab/module.hpp"
#include "siltlab/pathmatrix.hpp"

namespace siltlab {

template <class K>
struct Complex {
  AlgebraPtr alg;
  int lo = 0;
  std::vector<std::vector<int>> terms;  // vertex indices of the summands, per degree
  std::vector<PathMatrix<K>> d;         // d[i] : terms[i] -> terms[i+1]

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }

  const std::vector<int>& term(int k) const {
    static const std::vector<int> empty;
    if (k < lo || k > hi()) return empty;
    return terms[k - lo];
  }

  /// d^k : X^k -> X^{k+1} (a zero matrix outside the stored range).
  PathMatrix<K> diff(int k) const {
    if (k >= lo && k < hi()) return d[k - lo];
    return PathMatrix<K>(term(k), term(k + 1));
  }

  int size() const {
    int s = 0;
    for (const auto& t : terms) s += static_cast<int>(t.size());
    return s;
  }
  bool is_zero() const { return size() == 0; }

  /// Drop empty terms at both ends.
  void trim() {
    while (!terms.empty() && terms.back().empty()) {
      terms.pop_back();
      if (!d.empty()) d.pop_back();
    }
    while (!terms.empty() && terms.front().empty()) {
      terms.erase(terms.begin());
      if (!d.empty()) d.erase(d.begin());
      ++lo;
    }
    if (terms.empty()) {
      lo = 0;
      d.clear();
    }
  }

  /// Support contained in degrees [-1, 0].
  bool is_two_term() const { return is_zero() || (lo >= -1 && hi() <= 0); }

  /// Terms of degree -1 and 0 as multiplicity vectors.
  std::vector<int> multiplicities(int k) const {
    std::vector<int> m(alg->num_vertices(), 0);
    for (int v : term(k)) ++m[v];
    return m;
  }
};

template <class K>
using CPtr = std::shared_ptr<const Complex<K>>;

template <class K>
CPtr<K> share(Complex<K> c) {
  return std::make_shared<const Complex<K>>(std::move(c));
}

template <class K>
Complex<K> zero_complex(const AlgebraPtr& alg) {
  Complex<K> c;
  c.alg = alg;
  return c;
}

/// P^{-1} -> P^0 with the given vertex lists and differential.
template <class K>
Complex<K> two_term(const AlgebraPtr& alg, std::vector<int> neg, std::vector<int> zero, PathMatrix<K> d) {
  Complex<K> c;
  c.alg = alg;
  c.lo = -1;
  d.rows = neg;
  d.cols = zero;
  c.terms = {std::move(neg), std::move(zero)};
  c.d = {std::move(d)};
  c.trim();
  return c;
}

/// Stalk complex of a sum of projectives in a single degree.
template <class K>
Complex<K> stalk(const AlgebraPtr& alg, std::vector<int> vertices, int degree = 0) {
  Complex<K> c;
  c.alg = alg;
  c.lo = degree;
  c.terms = {std::move(vertices)};
  c.trim();
  return c;
}

/// The regular module A = P_1 + ... + P_l in degree 0.
template <class K>
Complex<K> regular_stalk(const AlgebraPtr& alg, int degree = 0) {
  std::vector<int> v;
  for (int i = 0; i < alg->num_vertices(); ++i) v.push_back(i);
  return stalk<K>(alg, v, degree);
}

/// Contractible complex P =id P occupying degrees [k, k+1].
template <class K>
Complex<K> disk(const AlgebraPtr& alg, const std::vector<int>& p, int k) {
  Complex<K> c;
  c.alg = alg;
  c.lo = k;
  c.terms = {p, p};
  c.d = {PathMatrix<K>::identity(p)};
  c.trim();
  return c;
}

/// Throws InvalidInput unless entries lie in the right Hom spaces and d d = 0.
template <class K>
void validate(const Complex<K>& x) {
  const PathAlgebra& A = *x.alg;
  for (int k = x.lo; k < x.hi(); ++k) {
    const auto& m = x.d[k - x.lo];
    if (m.rows != x.term(k) || m.cols != x.term(k + 1)) throw InvalidInput("differential shape mismatch");
    for (int r = 0; r < m.nrows(); ++r)
      for (const auto& e : m.e[r]) {
        const Path& p = A.basis_path(e.path);
        if (p.src != m.rows[r] || p.tgt != m.cols[e.col]) throw InvalidInput("differential entry has wrong endpoints");
      }
  }
  for (int k = x.lo; k + 1 < x.hi(); ++k)
    if (!mul(x.diff(k), x.diff(k + 1), A).is_zero_matrix()) throw InvalidInput("d o d != 0");
}

template <class K>
Complex<K> shift(const Complex<K>& x, int n) {
  Complex<K> y = x;
  y.lo = x.lo - n;
  if (n % 2 != 0)
    for (auto& m : y.d) m = scaled(m, K(-1));
  return y;
}

template <class K>
Complex<K> direct_sum(const Complex<K>& x, const Complex<K>& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.alg != y.alg) throw AlgebraMismatch("direct sum of complexes over different algebras");
  Complex<K> s;
  s.alg = x.alg;
  s.lo = std::min(x.lo, y.lo);
  int hi = std::max(x.hi(), y.hi());
  for (int k = s.lo; k <= hi; ++k) {
    auto t = x.term(k);
    const auto& u = y.term(k);
    t.insert(t.end(), u.begin(), u.end());
    s.terms.push_back(std::move(t));
  }
  for (int k = s.lo; k < hi; ++k) s.d.push_back(diag(x.diff(k), y.diff(k)));
  s.trim();
  return s;
}

template <class K>
Complex<K> direct_sum(const std::vector<Complex<K>>& xs, const AlgebraPtr& alg) {
  Complex<K> s = zero_complex<K>(alg);
  for (const auto& x : xs) s = direct_sum(s, x);
  return s;
}

template <class K>
Complex<K> power(const Complex<K>& x, int n) {
  Complex<K> s = zero_complex<K>(x.alg);
  for (int i = 0; i < n; ++i) s = direct_sum(s, x);
  return s;
}

/// [P^0] - [P^{-1}] + ..., i.e. sum_k (-1)^k [X^k] in the basis [P_1], ..., [P_l].
template <class K>
std::vector<long long> g_vector(const Complex<K>& x) {
  std::vector<long long> g(x.alg->num_vertices(), 0);
  for (int k = x.lo; k <= x.hi(); ++k)
    for (int v : x.term(k)) g[v] += (k % 2 == 0) ? 1 : -1;
  return g;
}

/// Pairing of a class in K_0(proj) with a dimension vector: <P_i, S_j> = delta_ij.
inline Q euler_pair(const std::vector<Q>& theta, const DimVector& d) {
  Q s = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) s += theta[i] * d[i];
  return s;
}

inline Q euler_pair(const std::vector<long long>& g, const DimVector& d) {
  Q s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += Q(static_cast<long>(g[i])) * d[i];
  return s;
}

// ---- chain maps --------------------------------------------------------------

template <class K>
struct ChainMap {
  CPtr<K> src, tgt;
  std::map<int, PathMatrix<K>> f;  // degree -> X^k -> Y^k; missing degrees are zero

  PathMatrix<K> at(int k) const {
    auto it = f.find(k);
    if (it != f.end()) return it->second;
    return PathMatrix<K>(src->term(k), tgt->term(k));
  }

  int lo() const { return std::min(src->is_zero() ? 0 : src->lo, tgt->is_zero() ? 0 : tgt->lo); }
  int hi() const { return std::max(src->is_zero() ? 0 : src->hi(), tgt->is_zero() ? 0 : tgt->hi()); }

  void set(int k, PathMatrix<K> m) {
    m.rows = src->term(k);
    m.cols = tgt->term(k);
    if (m.is_zero_matrix())
      f.erase(k);
    else
      f[k] = std::move(m);
  }
};

template <class K>
ChainMap<K> zero_map(const CPtr<K>& x, const CPtr<K>& y) {
  return ChainMap<K>{x, y, {}};
}

template <class K>
ChainMap<K> identity_map(const CPtr<K>& x) {
  ChainMap<K> m{x, x, {}};
  for (int k = x->lo; k <= x->hi(); ++k)
    if (!x->term(k).empty()) m.f[k] = PathMatrix<K>::identity(x->term(k));
  return m;
}

/// f then g.
template <class K>
ChainMap<K> compose(const ChainMap<K>& f, const ChainMap<K>& g) {
  ChainMap<K> h{f.src, g.tgt, {}};
  const PathAlgebra& A = *f.src->alg;
  for (const auto& [k, m] : f.f) {
    auto it = g.f.find(k);
    if (it == g.f.end()) continue;
    h.set(k, mul(m, it->second, A));
  }
  return h;
}

template <class K>
ChainMap<K> add(const ChainMap<K>& f, const ChainMap<K>& g, const K& s = K(1)) {
  ChainMap<K> h = f;
  for (const auto& [k, m] : g.f) h.set(k, add(h.at(k), m, s));
  return h;
}

template <class K>
ChainMap<K> scaled(const ChainMap<K>& f, const K& s) {
  ChainMap<K> h{f.src, f.tgt, {}};
  for (const auto& [k, m] : f.f) h.set(k, scaled(m, s));
  return h;
}

template <class K>
bool maps_equal(const ChainMap<K>& f, const ChainMap<K>& g) {
  for (int k = std::min(f.lo(), g.lo()); k <= std::max(f.hi(), g.hi()); ++k)
    if (!(f.at(k) == g.at(k))) return false;
  return true;
}

template <class K>
bool is_chain_map(const ChainMap<K>& f) {
  const PathAlgebra& A = *f.src->alg;
  for (int k = f.lo() - 1; k <= f.hi(); ++k) {
    auto lhs = mul(f.src->diff(k), f.at(k + 1), A);
    auto rhs = mul(f.at(k), f.tgt->diff(k), A);
    if (!add(lhs, rhs, K(-1)).is_zero_matrix()) return false;
  }
  return true;
}

/// Reinterpret f : X -> Y as a map with the same matrices into a complex with equal terms.
template <class K>
ChainMap<K> retarget(ChainMap<K> f, const CPtr<K>& src, const CPtr<K>& tgt) {
  f.src = src;
  f.tgt = tgt;
  return f;
}

/// Map into a direct sum: components side by side.
template <class K>
ChainMap<K> map_into_sum(const ChainMap<K>& f, const ChainMap<K>& g, const CPtr<K>& sum) {
  ChainMap<K> h{f.src, sum, {}};
  for (int k = sum->lo; k <= sum->hi(); ++k) h.set(k, hstack(f.at(k), g.at(k)));
  return h;
}

/// Map out of a direct sum: components stacked.
template <class K>
ChainMap<K> map_from_sum(const ChainMap<K>& f, const ChainMap<K>& g, const CPtr<K>& sum) {
  ChainMap<K> h{sum, f.tgt, {}};
  for (int k = sum->lo; k <= sum->hi(); ++k) h.set(k, vstack(f.at(k), g.at(k)));
  return h;
}

template <class K>
ChainMap<K> diag_map(const ChainMap<K>& f, const ChainMap<K>& g, const CPtr<K>& src, const CPtr<K>& tgt) {
  ChainMap<K> h{src, tgt, {}};
  for (int k = src->lo; k <= src->hi(); ++k) h.set(k, diag(f.at(k), g.at(k)));
  return h;
}

/// Mapping cone of f : X -> Y.
template <class K>
Complex<K> cone(const ChainMap<K>& f) {
  const auto& x = *f.src;
  const auto& y = *f.tgt;
  Complex<K> c;
  c.alg = x.alg;
  int lo = std::min(x.is_zero() ? 0 : x.lo - 1, y.is_zero() ? 0 : y.lo);
  int hi = std::max(x.is_zero() ? 0 : x.hi() - 1, y.is_zero() ? 0 : y.hi());
  c.lo = lo;
  for (int k = lo; k <= hi; ++k) {
    auto t = x.term(k + 1);
    const auto& u = y.term(k);
    t.insert(t.end(), u.begin(), u.end());
    c.terms.push_back(std::move(t));
  }
  for (int k = lo; k < hi; ++k) {
    auto top = hstack(scaled(x.diff(k + 1), K(-1)), f.at(k + 1));
    auto bottom = hstack(PathMatrix<K>(y.term(k), x.term(k + 2)), y.diff(k));
    c.d.push_back(vstack(top, bottom));
  }
  c.trim();
  return c;
}

/// Cocone: cone(f)[-1].
template <class K>
Complex<K> cocone(const ChainMap<K>& f) {
  return shift(cone(f), -1);
}

// ---- Hom in the homotopy category --------------------------------------------

namespace detail {

/// Coordinates for Hom(sum of P_rows, sum of P_cols): one slot per (row, col, path).
struct HomLayout {
  std::vector<int> rows, cols;
  std::vector<int> off;  // (r * ncols + c) -> offset
  int size = 0;

  HomLayout() = default;
  HomLayout(const PathAlgebra& A, const std::vector<int>& r, const std::vector<int>& c) : rows(r), cols(c) {
    off.resize(rows.size() * cols.size() + 1);
    int o = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        off[i * cols.size() + j] = o;
        o += static_cast<int>(A.paths_between(rows[i], cols[j]).size());
      }
    off.back() = o;
    size = o;
  }
  int index(const PathAlgebra& A, int r, int c, int path) const {
    return off[r * cols.size() + c] + A.position(path);
  }
};

}  // namespace detail

/// Hom_{K^b}(X, Z) for complexes X, Z (Z may be a shifted complex), with
/// coordinates of arbitrary chain maps in the chosen basis.
template <class K>
class HomSpace {
 public:
  CPtr<K> src, tgt;
  std::vector<ChainMap<K>> basis;

  int dim() const { return static_cast<int>(basis.size()); }

  /// Coordinates of a chain map X -> Z modulo null-homotopic maps.
  std::vector<K> coords(const ChainMap<K>& f) const {
    std::vector<K> out(basis.size(), K(0));
    if (basis.empty()) return out;
    SVec<K> v = residue_->reduce(vectorize(f));
    auto rep = quot_->represent(std::move(v));
    if (!rep) throw LinearSolveFailure("map is not a chain map of the expected type");
    for (const auto& [i, x] : *rep) out[i] = x;
    return out;
  }

  bool is_null_homotopic(const ChainMap<K>& f) const {
    if (basis.empty()) return true;
    for (const auto& x : coords(f))
      if (!is_zero(x)) return false;
    return true;
  }

  ChainMap<K> combination(const std::vector<K>& c) const {
    ChainMap<K> h = zero_map(src, tgt);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!is_zero(c[i])) h = add(h, basis[i], c[i]);
    return h;
  }

  SVec<K> vectorize(const ChainMap<K>& f) const {
    const PathAlgebra& A = *src->alg;
    std::vector<std::pair<int, K>> raw;
    for (const auto& [k, m] : f.f) {
      auto it = layout_.find(k);
      if (it == layout_.end()) {
        if (!m.is_zero_matrix()) throw LinearSolveFailure("map has components outside the Hom layout");
        continue;
      }
      const auto& [base, lay] = it->second;
      for (int r = 0; r < m.nrows(); ++r)
        for (const auto& e : m.e[r]) raw.emplace_back(base + lay.index(A, r, e.col, e.path), e.c);
    }
    return collect<K>(std::move(raw));
  }

  template <class T>
  friend HomSpace<T> hom_k(const CPtr<T>& x, const CPtr<T>& z);

 private:
  std::map<int, std::pair<int, detail::HomLayout>> layout_;  // degree -> (offset, layout)
  int nvars_ = 0;
  std::shared_ptr<Echelon<K>> residue_;  // null-homotopic maps
  std::shared_ptr<Echelon<K>> quot_;     // basis residues, tracked
};

/// Hom_{K^b}(X, Z): chain maps modulo homotopy, by exact elimination.
template <class K>
HomSpace<K> hom_k(const CPtr<K>& x, const CPtr<K>& z) {
  if (x->alg != z->alg) throw AlgebraMismatch("hom_k over different algebras");
  const PathAlgebra& A = *x->alg;
  HomSpace<K> H;
  H.src = x;
  H.tgt = z;
  H.residue_ = std::make_shared<Echelon<K>>(0);
  H.quot_ = std::make_shared<Echelon<K>>(0, true);
  if (x->is_zero() || z->is_zero()) return H;
  const int lo = std::min(x->lo, z->lo), hi = std::max(x->hi(), z->hi());
  int nv = 0;
  for (int k = lo; k <= hi; ++k) {
    if (x->term(k).empty() || z->term(k).empty()) continue;
    detail::HomLayout lay(A, x->term(k), z->term(k));
    if (lay.size == 0) continue;
    H.layout_[k] = {nv, lay};
    nv += lay.size;
  }
  H.nvars_ = nv;
  H.residue_ = std::make_shared<Echelon<K>>(nv);
  H.quot_ = std::make_shared<Echelon<K>>(nv, true);
  if (nv == 0) return H;

  // Column lists of each differential of X (entries of d_X^{k} with a given column).
  auto columns = [&](const PathMatrix<K>& m) {
    std::vector<std::vector<std::pair<int, const PEntry<K>*>>> cols(m.ncols());
    for (int r = 0; r < m.nrows(); ++r)
      for (const auto& e : m.e[r]) cols[e.col].emplace_back(r, &e);
    return cols;
  };
  std::map<int, PathMatrix<K>> dx, dz;
  for (int k = lo - 1; k <= hi; ++k) {
    dx[k] = x->diff(k);
    dz[k] = z->diff(k);
  }
  std::map<int, std::vector<std::vector<std::pair<int, const PEntry<K>*>>>> dxcols;
  for (int k = lo - 1; k <= hi; ++k) dxcols[k] = columns(dx[k]);

  // Chain-map equations: E_k = d_X^{k-1} phi^k - phi^{k-1} d_Z^{k-1} : X^{k-1} -> Z^k.
  std::map<int, std::pair<int, detail::HomLayout>> eq_layout;
  int ne = 0;
  for (int k = lo; k <= hi + 1; ++k) {
    const auto& r = x->term(k - 1);
    const auto& c = z->term(k);
    if (r.empty() || c.empty()) continue;
    detail::HomLayout lay(A, r, c);
    eq_layout[k] = {ne, lay};
    ne += lay.size;
  }
  std::vector<std::vector<std::pair<int, K>>> eq_rows(ne);
  for (const auto& [k, bl] : H.layout_) {
    const auto& [base, lay] = bl;
    const auto& cx = dxcols[k - 1];
    const auto& rz = dz[k];
    auto eqk = eq_layout.find(k);
    auto eqk1 = eq_layout.find(k + 1);
    for (int r = 0; r < static_cast<int>(lay.rows.size()); ++r)
      for (int c = 0; c < static_cast<int>(lay.cols.size()); ++c)
        for (int p : A.paths_between(lay.rows[r], lay.cols[c])) {
          const int var = base + lay.index(A, r, c, p);
          if (eqk != eq_layout.end()) {
            const auto& [eb, el] = eqk->second;
            for (const auto& [r2, e] : cx[r])
              for (const auto& [q, val] : A.mul<K>(e->path, p))
                eq_rows[eb + el.index(A, r2, c, q)].emplace_back(var, e->c * val);
          }
          if (eqk1 != eq_layout.end()) {
            const auto& [eb, el] = eqk1->second;
            for (const auto& e : rz.e[c])
              for (const auto& [q, val] : A.mul<K>(p, e.path))
                eq_rows[eb + el.index(A, r, e.col, q)].emplace_back(var, -(e.c * val));
          }
        }
  }
  Echelon<K> eqs(nv);
  for (auto& row : eq_rows)
    if (!row.empty()) eqs.insert(collect<K>(std::move(row)));
  auto cycles = eqs.nullspace();

  // Null-homotopic maps: h^k : X^k -> Z^{k-1} gives d_X^{k-1} h^k (degree k-1) + h^k d_Z^{k-1} (degree k).
  for (int k = lo; k <= hi + 1; ++k) {
    const auto& r = x->term(k);
    const auto& c = z->term(k - 1);
    if (r.empty() || c.empty()) continue;
    const auto& cx = dxcols[k - 1];
    const auto& rz = dz[k - 1];
    auto lk1 = H.layout_.find(k - 1);
    auto lk = H.layout_.find(k);
    for (int ri = 0; ri < static_cast<int>(r.size()); ++ri)
      for (int ci = 0; ci < static_cast<int>(c.size()); ++ci)
        for (int p : A.paths_between(r[ri], c[ci])) {
          std::vector<std::pair<int, K>> raw;
          if (lk1 != H.layout_.end()) {
            const auto& [b, l] = lk1->second;
            for (const auto& [r2, e] : cx[ri])
              for (const auto& [q, val] : A.mul<K>(e->path, p)) raw.emplace_back(b + l.index(A, r2, ci, q), e->c * val);
          }
          if (lk != H.layout_.end()) {
            const auto& [b, l] = lk->second;
            for (const auto& e : rz.e[ci])
              for (const auto& [q, val] : A.mul<K>(p, e.path)) raw.emplace_back(b + l.index(A, ri, e.col, q), e.c * val);
          }
          auto v = collect<K>(std::move(raw));
          if (!v.empty()) H.residue_->insert(std::move(v));
        }
  }

  for (auto& cyc : cycles) {
    SVec<K> res = H.residue_->reduce(cyc);
    if (res.empty()) continue;
    if (!H.quot_->insert(res)) continue;
    ChainMap<K> m{x, z, {}};
    // decode the cycle into matrices
    for (const auto& [k, bl] : H.layout_) {
      const auto& [base, lay] = bl;
      PathMatrix<K> mat(lay.rows, lay.cols);
      auto it = std::lower_bound(cyc.begin(), cyc.end(), base, [](const auto& e, int b) { return e.first < b; });
      for (; it != cyc.end() && it->first < base + lay.size; ++it) {
        int local = it->first - base;
        // find (r, c) block containing local
        auto pos = std::upper_bound(lay.off.begin(), lay.off.end() - 1, local) - lay.off.begin() - 1;
        int r = static_cast<int>(pos / lay.cols.size());
        int c = static_cast<int>(pos % lay.cols.size());
        int p = A.paths_between(lay.rows[r], lay.cols[c])[local - lay.off[pos]];
        mat.e[r].push_back(PEntry<K>{c, p, it->second});
      }
      for (auto& row : mat.e) PathMatrix<K>::normalize(row);
      m.set(k, std::move(mat));
    }
    H.basis.push_back(std::move(m));
  }
  // The tracked echelon numbers insertions, including rejected ones; renumber to basis indices.
  {
    auto q = std::make_shared<Echelon<K>>(nv, true);
    for (const auto& b : H.basis) q->insert(H.residue_->reduce(H.vectorize(b)));
    H.quot_ = q;
  }
  return H;
}

template <class K>
HomSpace<K> hom_k(const Complex<K>& x, const Complex<K>& y, int n = 0) {
  return hom_k(share(x), share(shift(y, n)));
}

/// dim Hom_{K^b}(X, Y[n]); two-term complexes have no maps to Y[n] for n >= 2.
template <class K>
int hom_dim(const Complex<K>& x, const Complex<K>& y, int n = 0) {
  if (n >= 2 && x.is_two_term() && y.is_two_term()) return 0;
  if (n <= -2 && x.is_two_term() && y.is_two_term()) return 0;
  return hom_k(x, y, n).dim();
}

// ---- minimal forms ------------------------------------------------------------

/// Remove contractible summands P =id P by Gaussian elimination of unit entries.
template <class K>
Complex<K> minimal_form(Complex<K> x) {
  const PathAlgebra& A = *x.alg;
  while (true) {
    bool found = false;
    for (int k = x.lo; k < x.hi() && !found; ++k) {
      auto& m = x.d[k - x.lo];
      for (int r = 0; r < m.nrows() && !found; ++r)
        for (const auto& e : m.e[r]) {
          if (!A.is_trivial(e.path)) continue;
          found = true;
          const int c = e.col;
          const K phi_inv = inv(e.c);
          // new d^k = eps - gamma phi^{-1} delta on rows != r, cols != c
          std::vector<int> ri, ci;
          for (int i = 0; i < m.nrows(); ++i)
            if (i != r) ri.push_back(i);
          for (int j = 0; j < m.ncols(); ++j)
            if (j != c) ci.push_back(j);
          PathMatrix<K> delta = select(m, {r}, ci);
          PathMatrix<K> gamma = select(m, ri, {c});
          PathMatrix<K> eps = select(m, ri, ci);
          PathMatrix<K> corr = mul(gamma, delta, A);
          PathMatrix<K> nd = add(eps, corr, K(-phi_inv));
          std::vector<int> nt_k, nt_k1;
          for (int i : ri) nt_k.push_back(x.terms[k - x.lo][i]);
          for (int j : ci) nt_k1.push_back(x.terms[k + 1 - x.lo][j]);
          if (k - 1 >= x.lo) {
            auto& prev = x.d[k - 1 - x.lo];
            std::vector<int> all;
            for (int i = 0; i < prev.nrows(); ++i) all.push_back(i);
            prev = select(prev, all, ri);
          }
          if (k + 1 < x.hi()) {
            auto& next = x.d[k + 1 - x.lo];
            std::vector<int> all;
            for (int j = 0; j < next.ncols(); ++j) all.push_back(j);
            next = select(next, ci, all);
          }
          x.terms[k - x.lo] = nt_k;
          x.terms[k + 1 - x.lo] = nt_k1;
          x.d[k - x.lo] = nd;
          break;
        }
    }
    if (!found) break;
  }
  x.trim();
  return x;
}

/// True if every differential entry lies in the radical.
template <class K>
bool is_minimal(const Complex<K>& x) {
  for (const auto& m : x.d)
    for (const auto& row : m.e)
      for (const auto& e : row)
        if (x.alg->is_trivial(e.path)) return false;
  return true;
}

template <class K2, class K>
Complex<K2> convert(const Complex<K>& x) {
  Complex<K2> y;
  y.alg = x.alg;
  y.lo = x.lo;
  y.terms = x.terms;
  for (const auto& m : x.d) y.d.push_back(convert<K2>(m));
  return y;
}

// ---- cohomology, Nakayama functor, duality ------------------------------------

/// The module map between sums of projectives induced by a path matrix.
template <class K>
ModuleMap<K> projective_map(const PathMatrix<K>& m, const Representation<K>& src, const Representation<K>& tgt) {
  // (P_u)_v has basis paths v -> u; a path q : u -> w sends path s : v -> u to s q.
  const PathAlgebra& A = *src.alg;
  const int l = A.num_vertices();
  ModuleMap<K> f;
  for (int v = 0; v < l; ++v) {
    Mat<K> mv(tgt.dim[v], src.dim[v]);
    int roff = 0;
    std::vector<int> coff(m.ncols() + 1, 0);
    for (int c = 0; c < m.ncols(); ++c)
      coff[c + 1] = coff[c] + static_cast<int>(A.paths_between(v, m.cols[c]).size());
    for (int r = 0; r < m.nrows(); ++r) {
      const auto& sp = A.paths_between(v, m.rows[r]);
      for (const auto& e : m.e[r])
        for (int si = 0; si < static_cast<int>(sp.size()); ++si)
          for (const auto& [b, x] : A.mul<K>(sp[si], e.path)) mv(coff[e.col] + A.position(b), roff + si) += e.c * x;
      roff += static_cast<int>(sp.size());
    }
    f.f.push_back(std::move(mv));
  }
  return f;
}

template <class K>
Representation<K> projective_sum(const AlgebraPtr& alg, const std::vector<int>& vs) {
  Representation<K> r = zero_rep<K>(alg);
  for (int v : vs) r = direct_sum(r, projective<K>(alg, v));
  return r;
}

template <class K>
Representation<K> injective_sum(const AlgebraPtr& alg, const std::vector<int>& vs) {
  Representation<K> r = zero_rep<K>(alg);
  for (int v : vs) r = direct_sum(r, injective<K>(alg, v));
  return r;
}

/// The module map between sums of injectives obtained by applying the Nakayama functor.
template <class K>
ModuleMap<K> nakayama_map(const PathMatrix<K>& m, const Representation<K>& src, const Representation<K>& tgt) {
  // (I_u)_v is dual to paths u -> v; q : u -> w induces the dual of (paths w -> v) -> (paths u -> v), s |-> q s.
  const PathAlgebra& A = *src.alg;
  const int l = A.num_vertices();
  ModuleMap<K> f;
  for (int v = 0; v < l; ++v) {
    Mat<K> mv(tgt.dim[v], src.dim[v]);
    std::vector<int> coff(m.ncols() + 1, 0);
    for (int c = 0; c < m.ncols(); ++c)
      coff[c + 1] = coff[c] + static_cast<int>(A.paths_between(m.cols[c], v).size());
    int roff = 0;
    for (int r = 0; r < m.nrows(); ++r) {
      for (const auto& e : m.e[r]) {
        const auto& tp = A.paths_between(m.cols[e.col], v);
        for (int ti = 0; ti < static_cast<int>(tp.size()); ++ti)
          for (const auto& [b, x] : A.mul<K>(e.path, tp[ti])) mv(coff[e.col] + ti, roff + A.position(b)) += e.c * x;
      }
      roff += static_cast<int>(A.paths_between(m.rows[r], v).size());
    }
    f.f.push_back(std::move(mv));
  }
  return f;
}

/// H^k of the complex of modules obtained by evaluating X (projective modules).
template <class K>
Representation<K> cohomology(const Complex<K>& x, int k) {
  auto mk = projective_sum<K>(x.alg, x.term(k));
  auto in = projective_map(x.diff(k - 1), projective_sum<K>(x.alg, x.term(k - 1)), mk);
  auto out = projective_map(x.diff(k), mk, projective_sum<K>(x.alg, x.term(k + 1)));
  auto z = sub_representation(mk, kernel(out));
  // image of `in` inside the kernel
  Subspaces<K> im;
  auto kb = kernel(out);
  for (std::size_t v = 0; v < in.f.size(); ++v) {
    Echelon<K> e(kb.basis[v].rows, true);
    for (int c = 0; c < kb.basis[v].cols; ++c) e.insert(kb.basis[v].col_sparse(c));
    Mat<K> cb = column_basis(in.f[v]);
    Mat<K> rel(kb.basis[v].cols, cb.cols);
    for (int c = 0; c < cb.cols; ++c) {
      auto rep = e.represent(cb.col_sparse(c));
      if (!rep) throw LinearSolveFailure("d o d != 0");
      for (const auto& [i, val] : *rep) rel(i, c) = val;
    }
    im.basis.push_back(rel);
  }
  return quotient(z, im).rep;
}

template <class K>
Representation<K> H0(const Complex<K>& x) {
  return cohomology(x, 0);
}

/// H^{-1}(nu X): kernel of nu P^{-1} -> nu P^0 (for two-term X).
template <class K>
Representation<K> Hminus1_nu(const Complex<K>& x) {
  auto src = injective_sum<K>(x.alg, x.term(-1));
  auto tgt = injective_sum<K>(x.alg, x.term(0));
  auto f = nakayama_map(x.diff(-1), src, tgt);
  return sub_representation(src, kernel(f));
}

/// Hom_{K^b}(X, M[n]) for a module M: cohomology of Hom_A(X^{-n-1..-n+1}, M).
template <class K>
struct ModuleHom {
  int dim = 0;
  // representatives: vectors in Hom(X^{-n}, M) = sum over summands r of M_{v_r}
  std::vector<std::vector<K>> basis;
  std::shared_ptr<Echelon<K>> boundaries;
  std::shared_ptr<Echelon<K>> quot;
  std::vector<int> offsets;
};

namespace detail {

/// Matrix of precomposition Hom(Y, M) -> Hom(X, M) with f : X -> Y (sums of projectives).
template <class K>
Mat<K> precompose_matrix(const PathMatrix<K>& f, const Representation<K>& m) {
  const PathAlgebra& A = *m.alg;
  std::vector<int> ro(f.nrows() + 1, 0), co(f.ncols() + 1, 0);
  for (int r = 0; r < f.nrows(); ++r) ro[r + 1] = ro[r] + m.dim[f.rows[r]];
  for (int c = 0; c < f.ncols(); ++c) co[c + 1] = co[c] + m.dim[f.cols[c]];
  Mat<K> out(ro.back(), co.back());
  for (int r = 0; r < f.nrows(); ++r)
    for (const auto& e : f.e[r]) {
      Mat<K> pm = m.path_matrix(A.basis_path(e.path));  // M_{v_c} -> M_{v_r}
      for (int i = 0; i < pm.rows; ++i)
        for (int j = 0; j < pm.cols; ++j)
          if (!is_zero(pm(i, j))) out(ro[r] + i, co[e.col] + j) += e.c * pm(i, j);
    }
  return out;
}

}  // namespace detail

template <class K>
ModuleHom<K> hom_to_module(const Complex<K>& x, const Representation<K>& m, int n = 0) {
  const int k = -n;
  ModuleHom<K> h;
  // Hom(X^k, M) -> Hom(X^{k-1}, M) via precomposition with d^{k-1}; boundaries from Hom(X^{k+1}, M).
  Mat<K> out = detail::precompose_matrix(x.diff(k - 1), m);  // rows Hom(X^{k-1}), cols Hom(X^k)
  Mat<K> in = detail::precompose_matrix(x.diff(k), m);       // rows Hom(X^k), cols Hom(X^{k+1})
  const int dim_k = out.cols;
  h.offsets.assign(1, 0);
  for (int v : x.term(k)) h.offsets.push_back(h.offsets.back() + m.dim[v]);
  h.boundaries = std::make_shared<Echelon<K>>(dim_k);
  for (int c = 0; c < in.cols; ++c) h.boundaries->insert(in.col_sparse(c));
  h.quot = std::make_shared<Echelon<K>>(dim_k, true);
  Mat<K> z = kernel(out);
  for (int c = 0; c < z.cols; ++c) {
    auto v = z.col_sparse(c);
    auto res = h.boundaries->reduce(v);
    if (res.empty() || !h.quot->insert(res)) continue;
    std::vector<K> dense(dim_k, K(0));
    for (const auto& [i, val] : v) dense[i] = val;
    h.basis.push_back(std::move(dense));
  }
  h.quot = std::make_shared<Echelon<K>>(dim_k, true);
  for (const auto& b : h.basis) {
    SVec<K> v;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!is_zero(b[i])) v.emplace_back(static_cast<int>(i), b[i]);
    h.quot->insert(h.boundaries->reduce(v));
  }
  h.dim = static_cast<int>(h.basis.size());
  return h;
}

/// Coordinates of phi in Hom(X^k, M) modulo boundaries, in a ModuleHom basis.
template <class K>
std::vector<K> module_hom_coords(const ModuleHom<K>& h, const std::vector<K>& phi) {
  SVec<K> v;
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (!is_zero(phi[i])) v.emplace_back(static_cast<int>(i), phi[i]);
  auto rep = h.quot->represent(h.boundaries->reduce(v));
  if (!rep) throw LinearSolveFailure("not a cycle");
  std::vector<K> out(h.basis.size(), K(0));
  for (const auto& [i, x] : *rep) out[i] = x;
  return out;
}

/// Dual complex: X over A^op becomes, via Hom_k(-, k), a complex of injectives
/// over A in degrees negated. It is returned as nu^{-1} of that complex, i.e. a
/// complex of projectives over A with the transposed differential, paths reversed.
template <class K>
Complex<K> dualize(const Complex<K>& x, const AlgebraPtr& a) {
  const PathAlgebra& op = *x.alg;
  const PathAlgebra& A = *a;
  if (op.num_vertices() != A.num_vertices()) throw AlgebraMismatch("dualize: vertex count mismatch");
  Complex<K> y;
  y.alg = a;
  if (x.is_zero()) return y;
  y.lo = -x.hi();
  for (int k = y.lo; k <= -x.lo; ++k) y.terms.push_back(x.term(-k));
  for (int k = y.lo; k < -x.lo; ++k) {
    // d_Y^k : Y^k = X^{-k} -> Y^{k+1} = X^{-k-1}: transpose of d_X^{-k-1}, paths reversed.
    const auto dx = x.diff(-k - 1);
    PathMatrix<K> m(x.term(-k), x.term(-k - 1));
    for (int r = 0; r < dx.nrows(); ++r)
      for (const auto& e : dx.e[r]) {
        const Path& p = op.basis_path(e.path);
        if (p.arrows.empty()) {
          m.add(e.col, r, p.src, e.c);
          continue;
        }
        std::vector<int> rev;
        for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
          rev.push_back(A.quiver().arrow_index(op.quiver().arrows[*it].id));
        int any = A.find_any(rev);
        if (any < 0) throw AlgebraMismatch("dualize: algebra is not the opposite");
        for (const auto& [b, val] : A.normal_form<K>(any)) m.add(e.col, r, b, e.c * val);
      }
    y.d.push_back(std::move(m));
  }
  y.trim();
  return y;
}

/// Class of a complex of injectives in the basis [I_1], ..., [I_l], with the
/// convention sum_k (-1)^{k+1} [I^k]; for X^+ = dualize(X) this is -g(X).
template <class K>
std::vector<long long> injective_class(const Complex<K>& y) {
  auto g = g_vector(y);
  for (auto& x : g) x = -x;
  return g;
}

}  // namespace siltlab

namespace siltlab {

/// A chain map s : X -> Z with f s = g exactly (f : W -> X, g : W -> Z), if one exists.
template <class K>
std::optional<ChainMap<K>> solve_left_factor(const ChainMap<K>& f, const CPtr<K>& z, const ChainMap<K>& g) {
  const CPtr<K>& x = f.tgt;
  const PathAlgebra& A = *x->alg;
  if (x->is_zero()) {
    for (const auto& [k, m] : g.f)
      if (!m.is_zero_matrix()) return std::nullopt;
    return zero_map(x, z);
  }
  const int lo = std::min(x->lo, z->is_zero() ? x->lo : z->lo) - 1;
  const int hi = std::max(x->hi(), z->is_zero() ? x->hi() : z->hi()) + 1;
  std::map<int, std::pair<int, detail::HomLayout>> lay;
  int nv = 0;
  for (int k = lo; k <= hi; ++k) {
    detail::HomLayout l(A, x->term(k), z->term(k));
    if (l.size == 0) continue;
    lay[k] = {nv, l};
    nv += l.size;
  }
  const int rhs = nv;
  Echelon<K> sys(nv + 1);
  // equations keyed by (row, col, path) of the product block
  auto flush = [&](std::map<std::tuple<int, int, int>, std::vector<std::pair<int, K>>>& eqs) {
    for (auto& [key, row] : eqs) {
      auto v = collect<K>(std::move(row));
      if (!v.empty()) sys.insert(std::move(v));
    }
    eqs.clear();
  };
  for (int k = lo; k <= hi; ++k) {
    // chain condition: d_X^{k-1} s^k - s^{k-1} d_Z^{k-1} = 0 on X^{k-1} -> Z^k
    std::map<std::tuple<int, int, int>, std::vector<std::pair<int, K>>> eqs;
    auto dx = x->diff(k - 1);
    auto dz = z->diff(k - 1);
    auto it = lay.find(k);
    if (it != lay.end()) {
      const auto& [b, l] = it->second;
      for (int r = 0; r < dx.nrows(); ++r)
        for (const auto& e : dx.e[r])
          for (int c = 0; c < static_cast<int>(l.cols.size()); ++c)
            for (int p : A.paths_between(l.rows[e.col], l.cols[c]))
              for (const auto& [q, val] : A.mul<K>(e.path, p))
                eqs[{r, c, q}].emplace_back(b + l.index(A, e.col, c, p), e.c * val);
    }
    auto it1 = lay.find(k - 1);
    if (it1 != lay.end()) {
      const auto& [b, l] = it1->second;
      for (int r = 0; r < static_cast<int>(l.rows.size()); ++r)
        for (int c = 0; c < static_cast<int>(l.cols.size()); ++c)
          for (int p : A.paths_between(l.rows[r], l.cols[c]))
            for (const auto& e : dz.e[c])
              for (const auto& [q, val] : A.mul<K>(p, e.path))
                eqs[{r, e.col, q}].emplace_back(b + l.index(A, r, c, p), -(e.c * val));
    }
    flush(eqs);
    // factorisation: f^k s^k = g^k on W^k -> Z^k
    auto fk = f.at(k);
    auto gk = g.at(k);
    for (int r = 0; r < gk.nrows(); ++r)
      for (const auto& e : gk.e[r]) eqs[{r, e.col, e.path}].emplace_back(rhs, e.c);
    if (it != lay.end()) {
      const auto& [b, l] = it->second;
      for (int r = 0; r < fk.nrows(); ++r)
        for (const auto& e : fk.e[r])
          for (int c = 0; c < static_cast<int>(l.cols.size()); ++c)
            for (int p : A.paths_between(l.rows[e.col], l.cols[c]))
              for (const auto& [q, val] : A.mul<K>(e.path, p))
                eqs[{r, c, q}].emplace_back(b + l.index(A, e.col, c, p), e.c * val);
    }
    flush(eqs);
  }
  if (sys.is_pivot(rhs)) return std::nullopt;
  std::vector<K> sol(nv, K(0));
  for (const auto& row : sys.reduced_rows()) {
    int p = row.front().first;
    K b = coeff(row, rhs);
    sol[p] = b;
  }
  ChainMap<K> s{x, z, {}};
  for (const auto& [k, bl] : lay) {
    const auto& [b, l] = bl;
    PathMatrix<K> m(l.rows, l.cols);
    for (int r = 0; r < static_cast<int>(l.rows.size()); ++r)
      for (int c = 0; c < static_cast<int>(l.cols.size()); ++c)
        for (int p : A.paths_between(l.rows[r], l.cols[c])) m.add(r, c, p, sol[b + l.index(A, r, c, p)]);
    s.set(k, m);
  }
  return s;
}

}  // namespace siltlab
