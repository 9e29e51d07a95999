#pragma once

// Finite-dimensional right modules as quiver representations.
//
// Module convention: for an arrow a: s -> t the structure map is a matrix
// M_a : M_t -> M_s (rows dim M_s, columns dim M_t, acting on column vectors).
// A path p = a1...an acts by M_p = M_{a1} ... M_{an} : M_{t(p)} -> M_{s(p)}.
// With this convention (P_j)_v has basis the paths v -> j, so
// dim Hom(P_i, P_j) = #paths i -> j; for the Kronecker quiver 1 => 2 this
// gives P_1 = S_1 = (1,0) and P_2 = (2,1). (I_i)_v is dual to paths i -> v.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "siltlab/algebra.hpp"
#include "siltlab/linalg.hpp"

namespace siltlab {

using DimVector = std::vector<int>;

template <class K>
struct Representation {
  AlgebraPtr alg;
  DimVector dim;
  std::vector<Mat<K>> mats;  // one per arrow

  int total_dim() const {
    int s = 0;
    for (int d : dim) s += d;
    return s;
  }
  bool is_zero() const { return total_dim() == 0; }

  /// Structure matrix of a basis path.
  Mat<K> path_matrix(const Path& p) const {
    if (p.arrows.empty()) return Mat<K>::identity(dim[p.src]);
    Mat<K> m = mats[p.arrows[0]];
    for (std::size_t i = 1; i < p.arrows.size(); ++i) m = m * mats[p.arrows[i]];
    return m;
  }

  /// Throws InvalidInput unless shapes match dim and all relations hold.
  void validate() const {
    const auto& A = *alg;
    if (static_cast<int>(dim.size()) != A.num_vertices()) throw InvalidInput("dimension vector has wrong length");
    if (static_cast<int>(mats.size()) != A.num_arrows()) throw InvalidInput("wrong number of arrow matrices");
    for (int a = 0; a < A.num_arrows(); ++a) {
      const auto& m = mats[a];
      if (m.rows != dim[A.arrow_src(a)] || m.cols != dim[A.arrow_tgt(a)])
        throw InvalidInput("arrow matrix '" + A.quiver().arrows[a].id + "' has wrong shape");
    }
    for (const auto& rel : A.relations()) {
      Mat<K> acc;
      bool first = true;
      for (const auto& term : rel) {
        Path p;
        for (const auto& id : term.path) p.arrows.push_back(A.quiver().arrow_index(id));
        p.src = A.arrow_src(p.arrows.front());
        Mat<K> m = path_matrix(p);
        K c = from_rational<K>(term.coef);
        for (auto& x : m.a) x *= c;
        acc = first ? m : acc + m;
        first = false;
      }
      if (!first && !acc.is_zero_matrix()) throw InvalidInput("representation violates a relation");
    }
  }
};

/// Per-vertex linear maps f_v : X_v -> Y_v (matrices dim Y_v x dim X_v).
template <class K>
struct ModuleMap {
  std::vector<Mat<K>> f;
};

template <class K>
Representation<K> zero_rep(const AlgebraPtr& alg) {
  Representation<K> r;
  r.alg = alg;
  r.dim.assign(alg->num_vertices(), 0);
  for (int a = 0; a < alg->num_arrows(); ++a) r.mats.emplace_back(0, 0);
  return r;
}

template <class K>
Representation<K> simple(const AlgebraPtr& alg, int v) {
  Representation<K> r;
  r.alg = alg;
  r.dim.assign(alg->num_vertices(), 0);
  r.dim[v] = 1;
  for (int a = 0; a < alg->num_arrows(); ++a) r.mats.emplace_back(r.dim[alg->arrow_src(a)], r.dim[alg->arrow_tgt(a)]);
  return r;
}

template <class K>
Representation<K> projective(const AlgebraPtr& alg, int j) {
  const auto& A = *alg;
  Representation<K> r;
  r.alg = alg;
  for (int v = 0; v < A.num_vertices(); ++v) r.dim.push_back(static_cast<int>(A.paths_between(v, j).size()));
  for (int a = 0; a < A.num_arrows(); ++a) {
    int s = A.arrow_src(a), t = A.arrow_tgt(a);
    Mat<K> m(r.dim[s], r.dim[t]);
    const auto& from = A.paths_between(t, j);
    for (int c = 0; c < static_cast<int>(from.size()); ++c)
      for (const auto& [b, x] : A.mul<K>(A.arrow_basis(a), from[c])) m(A.position(b), c) += x;
    r.mats.push_back(std::move(m));
  }
  return r;
}

template <class K>
Representation<K> injective(const AlgebraPtr& alg, int i) {
  const auto& A = *alg;
  Representation<K> r;
  r.alg = alg;
  for (int v = 0; v < A.num_vertices(); ++v) r.dim.push_back(static_cast<int>(A.paths_between(i, v).size()));
  for (int a = 0; a < A.num_arrows(); ++a) {
    int s = A.arrow_src(a), t = A.arrow_tgt(a);
    // right multiplication by a: paths i->s to paths i->t, then transpose.
    Mat<K> m(r.dim[s], r.dim[t]);
    const auto& from = A.paths_between(i, s);
    for (int c = 0; c < static_cast<int>(from.size()); ++c)
      for (const auto& [b, x] : A.mul<K>(from[c], A.arrow_basis(a))) m(c, A.position(b)) += x;
    r.mats.push_back(std::move(m));
  }
  return r;
}

template <class K>
Representation<K> direct_sum(const Representation<K>& x, const Representation<K>& y) {
  const auto& A = *x.alg;
  if (x.alg != y.alg) throw AlgebraMismatch("direct sum over different algebras");
  Representation<K> r;
  r.alg = x.alg;
  for (int v = 0; v < A.num_vertices(); ++v) r.dim.push_back(x.dim[v] + y.dim[v]);
  for (int a = 0; a < A.num_arrows(); ++a) {
    int s = A.arrow_src(a), t = A.arrow_tgt(a);
    Mat<K> m(r.dim[s], r.dim[t]);
    for (int i = 0; i < x.dim[s]; ++i)
      for (int j = 0; j < x.dim[t]; ++j) m(i, j) = x.mats[a](i, j);
    for (int i = 0; i < y.dim[s]; ++i)
      for (int j = 0; j < y.dim[t]; ++j) m(x.dim[s] + i, x.dim[t] + j) = y.mats[a](i, j);
    r.mats.push_back(std::move(m));
  }
  return r;
}

template <class K>
bool is_module_map(const ModuleMap<K>& f, const Representation<K>& x, const Representation<K>& y) {
  const auto& A = *x.alg;
  for (int v = 0; v < A.num_vertices(); ++v)
    if (f.f[v].rows != y.dim[v] || f.f[v].cols != x.dim[v]) return false;
  for (int a = 0; a < A.num_arrows(); ++a) {
    int s = A.arrow_src(a), t = A.arrow_tgt(a);
    if (!(f.f[s] * x.mats[a] == y.mats[a] * f.f[t])) return false;
  }
  return true;
}

template <class K>
ModuleMap<K> compose(const ModuleMap<K>& f, const ModuleMap<K>& g) {  // f then g
  ModuleMap<K> h;
  for (std::size_t v = 0; v < f.f.size(); ++v) h.f.push_back(g.f[v] * f.f[v]);
  return h;
}

/// Basis of Hom_A(X, Y): solutions of the intertwiner equations.
template <class K>
std::vector<ModuleMap<K>> hom_space(const Representation<K>& x, const Representation<K>& y) {
  if (x.alg != y.alg) throw AlgebraMismatch("hom_space over different algebras");
  const auto& A = *x.alg;
  const int l = A.num_vertices();
  std::vector<int> off(l + 1, 0);
  for (int v = 0; v < l; ++v) off[v + 1] = off[v] + y.dim[v] * x.dim[v];
  const int n = off[l];
  auto var = [&](int v, int i, int j) { return off[v] + i * x.dim[v] + j; };
  Echelon<K> eqs(n);
  for (int a = 0; a < A.num_arrows(); ++a) {
    int s = A.arrow_src(a), t = A.arrow_tgt(a);
    const Mat<K>& mx = x.mats[a];
    const Mat<K>& my = y.mats[a];
    // (f_s mx - my f_t)(i, j) = 0 for i < dim Y_s, j < dim X_t
    for (int i = 0; i < y.dim[s]; ++i)
      for (int j = 0; j < x.dim[t]; ++j) {
        std::vector<std::pair<int, K>> raw;
        for (int k = 0; k < x.dim[s]; ++k)
          if (!is_zero(mx(k, j))) raw.emplace_back(var(s, i, k), mx(k, j));
        for (int k = 0; k < y.dim[t]; ++k)
          if (!is_zero(my(i, k))) raw.emplace_back(var(t, k, j), -my(i, k));
        eqs.insert(collect<K>(std::move(raw)));
      }
  }
  std::vector<ModuleMap<K>> basis;
  for (const auto& sol : eqs.nullspace()) {
    ModuleMap<K> f;
    for (int v = 0; v < l; ++v) f.f.emplace_back(y.dim[v], x.dim[v]);
    int v = 0;
    for (const auto& [idx, val] : sol) {
      while (idx >= off[v + 1]) ++v;
      int r = (idx - off[v]) / std::max(1, x.dim[v]);
      int c = (idx - off[v]) % std::max(1, x.dim[v]);
      f.f[v](r, c) = val;
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

/// A subspace of M_v at every vertex, given by a column basis.
template <class K>
struct Subspaces {
  std::vector<Mat<K>> basis;
  DimVector dims() const {
    DimVector d;
    for (const auto& b : basis) d.push_back(b.cols);
    return d;
  }
};

/// Restriction of M to an invariant subspace family.
template <class K>
Representation<K> sub_representation(const Representation<K>& m, const Subspaces<K>& u) {
  const auto& A = *m.alg;
  Representation<K> r;
  r.alg = m.alg;
  r.dim = u.dims();
  std::vector<Echelon<K>> ech;
  for (int v = 0; v < A.num_vertices(); ++v) {
    ech.emplace_back(m.dim[v], true);
    for (int c = 0; c < u.basis[v].cols; ++c) ech.back().insert(u.basis[v].col_sparse(c));
  }
  for (int a = 0; a < A.num_arrows(); ++a) {
    int s = A.arrow_src(a), t = A.arrow_tgt(a);
    Mat<K> img = m.mats[a] * u.basis[t];
    Mat<K> x(r.dim[s], r.dim[t]);
    for (int c = 0; c < img.cols; ++c) {
      auto rep = ech[s].represent(img.col_sparse(c));
      if (!rep) throw InvalidInput("subspace family is not a submodule");
      for (const auto& [i, val] : *rep) x(i, c) = val;
    }
    r.mats.push_back(std::move(x));
  }
  return r;
}

/// Quotient M / U together with the projection map M -> M/U.
template <class K>
struct Quotient {
  Representation<K> rep;
  ModuleMap<K> projection;
};

template <class K>
Quotient<K> quotient(const Representation<K>& m, const Subspaces<K>& u) {
  const auto& A = *m.alg;
  const int l = A.num_vertices();
  Quotient<K> q;
  q.rep.alg = m.alg;
  std::vector<std::vector<int>> comp(l);  // complement coordinates per vertex
  for (int v = 0; v < l; ++v) {
    Echelon<K> e(m.dim[v]);
    for (int c = 0; c < u.basis[v].cols; ++c) e.insert(u.basis[v].col_sparse(c));
    auto rows = e.reduced_rows();
    for (int i = 0; i < m.dim[v]; ++i)
      if (!e.is_pivot(i)) comp[v].push_back(i);
    const int qd = static_cast<int>(comp[v].size());
    q.rep.dim.push_back(qd);
    // y -> remainder of y modulo U, read at complement coordinates.
    std::vector<int> where(m.dim[v], -1);
    for (int k = 0; k < qd; ++k) where[comp[v][k]] = k;
    Mat<K> pr(qd, m.dim[v]);
    for (int k = 0; k < qd; ++k) pr(k, comp[v][k]) = K(1);
    for (const auto& r : rows) {
      int p = r.front().first;
      // e_p reduces to -(rest of r).
      for (std::size_t k = 1; k < r.size(); ++k)
        if (where[r[k].first] >= 0) pr(where[r[k].first], p) = -r[k].second;
    }
    q.projection.f.push_back(std::move(pr));
  }
  for (int a = 0; a < A.num_arrows(); ++a) {
    int s = A.arrow_src(a), t = A.arrow_tgt(a);
    Mat<K> sec(m.dim[t], q.rep.dim[t]);
    for (int k = 0; k < q.rep.dim[t]; ++k) sec(comp[t][k], k) = K(1);
    q.rep.mats.push_back(q.projection.f[s] * m.mats[a] * sec);
  }
  return q;
}

template <class K>
Subspaces<K> image(const ModuleMap<K>& f) {
  Subspaces<K> u;
  for (const auto& m : f.f) u.basis.push_back(column_basis(m));
  return u;
}

template <class K>
Subspaces<K> kernel(const ModuleMap<K>& f) {
  Subspaces<K> u;
  for (const auto& m : f.f) u.basis.push_back(kernel(m));
  return u;
}

template <class K>
Representation<K> cokernel(const ModuleMap<K>& f, const Representation<K>& y) {
  return quotient(y, image(f)).rep;
}

/// Sum of the images of all maps M -> X.
template <class K>
Subspaces<K> trace(const Representation<K>& m, const Representation<K>& x) {
  const int l = x.alg->num_vertices();
  auto homs = hom_space(m, x);
  Subspaces<K> u;
  for (int v = 0; v < l; ++v) {
    Echelon<K> e(x.dim[v]);
    std::vector<SVec<K>> cols;
    for (const auto& f : homs)
      for (int c = 0; c < f.f[v].cols; ++c) {
        auto col = f.f[v].col_sparse(c);
        if (e.insert(col)) cols.push_back(col);
      }
    Mat<K> b(x.dim[v], static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [i, val] : cols[c]) b(i, static_cast<int>(c)) = val;
    u.basis.push_back(std::move(b));
  }
  return u;
}

template <class K>
bool in_fac(const Representation<K>& m, const Representation<K>& x) {
  return trace(m, x).dims() == x.dim;
}

/// Smallest submodule of X containing the given vectors (per vertex, as columns).
template <class K>
Subspaces<K> generated_submodule(const Representation<K>& x, const Subspaces<K>& gens) {
  const auto& A = *x.alg;
  const int l = A.num_vertices();
  std::vector<Echelon<K>> ech;
  std::vector<std::vector<SVec<K>>> vecs(l);
  for (int v = 0; v < l; ++v) ech.emplace_back(x.dim[v]);
  std::vector<std::pair<int, SVec<K>>> work;
  for (int v = 0; v < l; ++v)
    for (int c = 0; c < gens.basis[v].cols; ++c) work.emplace_back(v, gens.basis[v].col_sparse(c));
  while (!work.empty()) {
    auto [v, vec] = std::move(work.back());
    work.pop_back();
    if (!ech[v].insert(vec)) continue;
    vecs[v].push_back(vec);
    // x in X_v maps to M_a x in X_s for every arrow a: s -> v.
    for (int a = 0; a < A.num_arrows(); ++a) {
      if (A.arrow_tgt(a) != v) continue;
      int s = A.arrow_src(a);
      SVec<K> out;
      std::vector<std::pair<int, K>> raw;
      for (const auto& [j, val] : vec)
        for (int i = 0; i < x.dim[s]; ++i)
          if (!is_zero(x.mats[a](i, j))) raw.emplace_back(i, x.mats[a](i, j) * val);
      out = collect<K>(std::move(raw));
      if (!out.empty()) work.emplace_back(s, std::move(out));
    }
  }
  Subspaces<K> u;
  for (int v = 0; v < l; ++v) {
    Mat<K> b(x.dim[v], static_cast<int>(vecs[v].size()));
    for (std::size_t c = 0; c < vecs[v].size(); ++c)
      for (const auto& [i, val] : vecs[v][c]) b(i, static_cast<int>(c)) = val;
    u.basis.push_back(std::move(b));
  }
  return u;
}

// ---- brute-force oracles over finite fields --------------------------------

namespace detail {

/// Enumerate all subspaces of K^m (K finite) as lists of basis vectors, calling fn for each.
template <class K, class Fn>
void for_each_subspace(int m, Fn&& fn, long long& budget) {
  const int p = static_cast<int>(ScalarTraits<K>::characteristic);
  std::vector<int> piv;
  std::function<void(int, int)> choose = [&](int start, int r) {
    if (static_cast<int>(piv.size()) == r) {
      // free positions: (row i, col j) with j > piv[i] and j not a pivot
      std::vector<std::pair<int, int>> free;
      std::vector<char> is_piv(m, 0);
      for (int c : piv) is_piv[c] = 1;
      for (int i = 0; i < r; ++i)
        for (int j = piv[i] + 1; j < m; ++j)
          if (!is_piv[j]) free.emplace_back(i, j);
      std::vector<int> val(free.size(), 0);
      while (true) {
        if (--budget < 0) throw BudgetExceeded("subspace enumeration exceeds budget");
        std::vector<std::vector<K>> rows(r, std::vector<K>(m, K(0)));
        for (int i = 0; i < r; ++i) rows[i][piv[i]] = K(1);
        for (std::size_t k = 0; k < free.size(); ++k) rows[free[k].first][free[k].second] = K(val[k]);
        fn(rows);
        std::size_t k = 0;
        while (k < val.size() && ++val[k] == p) val[k++] = 0;
        if (k == val.size()) break;
      }
      return;
    }
    for (int c = start; c < m; ++c) {
      piv.push_back(c);
      choose(c + 1, r);
      piv.pop_back();
    }
  };
  for (int r = 0; r <= m; ++r) choose(0, r);
}

}  // namespace detail

/// Exact set of dimension vectors of submodules of X (K must be a finite field).
template <class K>
std::set<DimVector> submodule_dim_vectors(const Representation<K>& x, long long budget = 2000000) {
  if constexpr (ScalarTraits<K>::characteristic == 0) {
    throw NeedsFiniteField("submodule enumeration needs a finite field");
  } else {
    const auto& A = *x.alg;
    const int l = A.num_vertices();
    // U_s must contain M_a(U_t) for every arrow a: s -> t, so fix targets first.
    std::vector<int> order(A.topo_order().rbegin(), A.topo_order().rend());
    std::vector<char> needed(l, 0);  // does some other vertex's choice depend on U_v?
    for (int a = 0; a < A.num_arrows(); ++a) needed[A.arrow_tgt(a)] = 1;
    std::set<DimVector> out;
    std::vector<std::vector<SVec<K>>> chosen(l);
    DimVector d(l, 0);
    std::vector<std::pair<int, int>> ranges(l);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == l) {
        // Expand dimension ranges of vertices nobody depends on.
        std::function<void(int)> expand = [&](int v) {
          if (v == l) {
            out.insert(d);
            return;
          }
          if (needed[v]) {
            expand(v + 1);
            return;
          }
          for (int k = ranges[v].first; k <= ranges[v].second; ++k) {
            d[v] = k;
            expand(v + 1);
          }
        };
        expand(0);
        return;
      }
      const int s = order[pos];
      // W = sum of images of chosen subspaces along arrows out of s.
      Echelon<K> w(x.dim[s]);
      for (int a = 0; a < A.num_arrows(); ++a) {
        if (A.arrow_src(a) != s) continue;
        int t = A.arrow_tgt(a);
        for (const auto& vec : chosen[t]) {
          std::vector<std::pair<int, K>> raw;
          for (const auto& [j, val] : vec)
            for (int i = 0; i < x.dim[s]; ++i)
              if (!is_zero(x.mats[a](i, j))) raw.emplace_back(i, x.mats[a](i, j) * val);
          w.insert(collect<K>(std::move(raw)));
        }
      }
      if (!needed[s]) {
        ranges[s] = {w.rank(), x.dim[s]};
        rec(pos + 1);
        return;
      }
      std::vector<int> comp;
      for (int i = 0; i < x.dim[s]; ++i)
        if (!w.is_pivot(i)) comp.push_back(i);
      std::vector<SVec<K>> wbasis = w.rows();
      detail::for_each_subspace<K>(
          static_cast<int>(comp.size()),
          [&](const std::vector<std::vector<K>>& rows) {
            std::vector<SVec<K>> basis = wbasis;
            for (const auto& r : rows) {
              SVec<K> vec;
              for (std::size_t k = 0; k < comp.size(); ++k)
                if (!is_zero(r[k])) vec.emplace_back(comp[k], r[k]);
              basis.push_back(std::move(vec));
            }
            chosen[s] = std::move(basis);
            d[s] = static_cast<int>(chosen[s].size());
            rec(pos + 1);
          },
          budget);
      chosen[s].clear();
    };
    rec(0);
    return out;
  }
}

/// True if the indecomposable L is isomorphic to a direct summand of M.
template <class K>
bool is_summand(const Representation<K>& l, const Representation<K>& m) {
  for (std::size_t v = 0; v < l.dim.size(); ++v)
    if (l.dim[v] > m.dim[v]) return false;
  if (l.is_zero()) return true;
  auto fs = hom_space(l, m);
  if (fs.empty()) return false;
  auto gs = hom_space(m, l);
  // End(L) is local: some composite L -> M -> L of basis maps is invertible iff L | M.
  for (const auto& f : fs)
    for (const auto& g : gs) {
      auto h = compose(f, g);
      bool inv_all = true;
      for (const auto& hv : h.f)
        if (hv.rows > 0 && !inverse(hv)) {
          inv_all = false;
          break;
        }
      if (inv_all) return true;
    }
  return false;
}

template <class K>
bool isomorphic_indecomposables(const Representation<K>& x, const Representation<K>& y) {
  return x.dim == y.dim && is_summand(x, y);
}

/// Representations with dimension vector bounded by D, up to isomorphism.
template <class K>
struct RepCatalog {
  std::vector<Representation<K>> indecomposables;
  std::vector<Representation<K>> reps;            // all classes, including 0
  std::vector<std::vector<int>> summands;         // indices into indecomposables, per rep
};

namespace detail {

/// Ext^1(L, S_v): basis of representatives in the space of functionals
/// eta_a : L_{t(a)} -> k for arrows a starting at v.
template <class K>
std::vector<SVec<K>> ext_to_simple(const Representation<K>& l, int v, std::vector<int>& offsets, std::vector<int>& arrows) {
  const auto& A = *l.alg;
  arrows.clear();
  offsets.assign(1, 0);
  for (int a = 0; a < A.num_arrows(); ++a)
    if (A.arrow_src(a) == v) {
      arrows.push_back(a);
      offsets.push_back(offsets.back() + l.dim[A.arrow_tgt(a)]);
    }
  const int n = offsets.back();
  auto slot = [&](int a) {
    for (std::size_t k = 0; k < arrows.size(); ++k)
      if (arrows[k] == a) return offsets[k];
    return -1;
  };
  // Cocycle conditions from relations starting at v: sum c * eta_{a1} L_{a2..an} = 0.
  Echelon<K> cond(n);
  for (const auto& rel : A.relations()) {
    std::vector<std::pair<int, Mat<K>>> parts;  // (first arrow, matrix of the rest)
    int tgt_dim = -1;
    for (const auto& term : rel) {
      Path p;
      for (const auto& id : term.path) p.arrows.push_back(A.quiver().arrow_index(id));
      if (A.arrow_src(p.arrows[0]) != v) break;
      Path rest;
      rest.arrows.assign(p.arrows.begin() + 1, p.arrows.end());
      rest.src = A.arrow_tgt(p.arrows[0]);
      Mat<K> m = l.path_matrix(rest);
      K c = from_rational<K>(term.coef);
      for (auto& x : m.a) x *= c;
      tgt_dim = m.cols;
      parts.emplace_back(p.arrows[0], std::move(m));
    }
    if (parts.size() != rel.size()) continue;
    for (int j = 0; j < tgt_dim; ++j) {
      std::vector<std::pair<int, K>> raw;
      for (const auto& [a, m] : parts)
        for (int i = 0; i < m.rows; ++i)
          if (!is_zero(m(i, j))) raw.emplace_back(slot(a) + i, m(i, j));
      cond.insert(collect<K>(std::move(raw)));
    }
  }
  auto cocycles = cond.nullspace();
  Echelon<K> e(n);
  for (int i = 0; i < l.dim[v]; ++i) {
    std::vector<std::pair<int, K>> raw;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      const auto& m = l.mats[arrows[k]];
      for (int j = 0; j < m.cols; ++j)
        if (!is_zero(m(i, j))) raw.emplace_back(offsets[k] + j, m(i, j));
    }
    e.insert(collect<K>(std::move(raw)));
  }
  std::vector<SVec<K>> reps;
  for (auto& z : cocycles)
    if (e.insert(z)) reps.push_back(std::move(z));
  return reps;
}

}  // namespace detail

/// All representations with dim <= bound (componentwise) up to isomorphism.
/// Indecomposables are produced as extensions 0 -> S_v -> M -> N -> 0 of
/// smaller modules; every module is then a multiset of indecomposables.
template <class K>
RepCatalog<K> enumerate_reps(const AlgebraPtr& alg, const DimVector& bound, long long budget = 5000000) {
  if constexpr (ScalarTraits<K>::characteristic == 0) {
    throw NeedsFiniteField("representation enumeration needs a finite field");
  } else {
    const auto& A = *alg;
    const int l = A.num_vertices();
    if (static_cast<int>(bound.size()) != l) throw InvalidInput("bound has wrong length");
    RepCatalog<K> cat;

    // dimension vectors <= bound, by total dimension then lexicographically
    std::vector<DimVector> dims;
    {
      DimVector d(l, 0);
      std::function<void(int)> gen = [&](int v) {
        if (v == l) {
          dims.push_back(d);
          return;
        }
        for (int k = 0; k <= bound[v]; ++k) {
          d[v] = k;
          gen(v + 1);
        }
      };
      gen(0);
      std::stable_sort(dims.begin(), dims.end(), [](const DimVector& a, const DimVector& b) {
        int sa = 0, sb = 0;
        for (int x : a) sa += x;
        for (int x : b) sb += x;
        return sa != sb ? sa < sb : a < b;
      });
    }
    auto leq = [&](const DimVector& a, const DimVector& b) {
      for (int v = 0; v < l; ++v)
        if (a[v] > b[v]) return false;
      return true;
    };
    std::vector<char> has_incoming(l, 0);
    for (int a = 0; a < A.num_arrows(); ++a) has_incoming[A.arrow_tgt(a)] = 1;

    // Multisets of known indecomposables with given total dimension.
    auto multisets = [&](const DimVector& target) {
      std::vector<std::vector<int>> out;
      std::vector<int> cur;
      DimVector rem = target;
      std::function<void(int)> rec = [&](int start) {
        bool done = true;
        for (int x : rem) done = done && x == 0;
        if (done) {
          out.push_back(cur);
          return;
        }
        for (int i = start; i < static_cast<int>(cat.indecomposables.size()); ++i) {
          const auto& d = cat.indecomposables[i].dim;
          if (!leq(d, rem)) continue;
          for (int v = 0; v < l; ++v) rem[v] -= d[v];
          cur.push_back(i);
          rec(i);
          cur.pop_back();
          for (int v = 0; v < l; ++v) rem[v] += d[v];
        }
      };
      rec(0);
      return out;
    };

    auto sum_of = [&](const std::vector<int>& idx) {
      Representation<K> r = zero_rep<K>(alg);
      for (int i : idx) r = direct_sum(r, cat.indecomposables[i]);
      return r;
    };

    for (const auto& d : dims) {
      int total = 0;
      for (int x : d) total += x;
      if (total == 0) continue;
      if (total == 1) {
        int v = static_cast<int>(std::find(d.begin(), d.end(), 1) - d.begin());
        cat.indecomposables.push_back(simple<K>(alg, v));
        continue;
      }
      const std::size_t first_new = cat.indecomposables.size();
      // Socle vertex candidates: a vertex without incoming arrows always lies in the socle.
      std::vector<int> socle_vs;
      for (int v = 0; v < l; ++v)
        if (d[v] > 0 && !has_incoming[v]) {
          socle_vs = {v};
          break;
        }
      if (socle_vs.empty())
        for (int v = 0; v < l; ++v)
          if (d[v] > 0) socle_vs.push_back(v);

      for (int v : socle_vs) {
        DimVector nd = d;
        --nd[v];
        std::map<int, std::vector<SVec<K>>> ext_cache;
        std::map<int, std::pair<std::vector<int>, std::vector<int>>> layout;
        for (const auto& ms : multisets(nd)) {
          // group into isotypes
          std::vector<std::pair<int, int>> iso;  // (indecomposable, multiplicity)
          for (int i : ms) {
            if (!iso.empty() && iso.back().first == i)
              ++iso.back().second;
            else
              iso.emplace_back(i, 1);
          }
          bool ok = true;
          for (auto [i, m] : iso) {
            if (!ext_cache.count(i)) {
              std::vector<int> offs, arrs;
              ext_cache[i] = detail::ext_to_simple(cat.indecomposables[i], v, offs, arrs);
              layout[i] = {offs, arrs};
            }
            if (static_cast<int>(ext_cache[i].size()) < m) ok = false;
          }
          if (!ok) continue;
          Representation<K> n = sum_of(ms);
          // Choose an m-dimensional subspace of Ext(L_i, S_v) per isotype.
          std::vector<std::vector<std::vector<std::vector<K>>>> choices(iso.size());
          for (std::size_t k = 0; k < iso.size(); ++k) {
            int e = static_cast<int>(ext_cache[iso[k].first].size());
            detail::for_each_subspace<K>(
                e,
                [&](const std::vector<std::vector<K>>& rows) {
                  if (static_cast<int>(rows.size()) == iso[k].second) choices[k].push_back(rows);
                },
                budget);
          }
          std::vector<std::size_t> pick(iso.size(), 0);
          while (true) {
            if (--budget < 0) throw BudgetExceeded("representation enumeration exceeds budget");
            // Assemble M: S_v is coordinate 0 of M_v, followed by N.
            Representation<K> m;
            m.alg = alg;
            m.dim = d;
            for (int a = 0; a < A.num_arrows(); ++a) {
              int s = A.arrow_src(a), t = A.arrow_tgt(a);
              Mat<K> mat(d[s], d[t]);
              int rs = s == v ? 1 : 0, cs = t == v ? 1 : 0;
              for (int i = 0; i < n.dim[s]; ++i)
                for (int j = 0; j < n.dim[t]; ++j) mat(rs + i, cs + j) = n.mats[a](i, j);
              m.mats.push_back(std::move(mat));
            }
            // eta for every copy, placed at the copy's coordinates of N_t.
            std::vector<int> copy_off(l, 0);
            for (std::size_t k = 0; k < iso.size(); ++k) {
              const auto& L = cat.indecomposables[iso[k].first];
              const auto& basis = ext_cache[iso[k].first];
              const auto& [offs, arrs] = layout[iso[k].first];
              const auto& rows = choices[k][pick[k]];
              for (int c = 0; c < iso[k].second; ++c) {
                SVec<K> eta;
                for (std::size_t b = 0; b < basis.size(); ++b) axpy(eta, rows[c][b], basis[b]);
                for (const auto& [idx, val] : eta) {
                  std::size_t slot = 0;
                  while (idx >= offs[slot + 1]) ++slot;
                  int a = arrs[slot];
                  int t = A.arrow_tgt(a);
                  m.mats[a](0, copy_off[t] + (t == v ? 1 : 0) + idx - offs[slot]) = val;
                }
                for (int u = 0; u < l; ++u) copy_off[u] += L.dim[u];
              }
            }
            bool fresh = true;
            for (std::size_t j = first_new; j < cat.indecomposables.size() && fresh; ++j)
              if (isomorphic_indecomposables(cat.indecomposables[j], m)) fresh = false;
            for (std::size_t j = 0; j < first_new && fresh; ++j)
              if (is_summand(cat.indecomposables[j], m)) fresh = false;
            if (fresh) cat.indecomposables.push_back(std::move(m));
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
            if (k == pick.size()) break;
          }
        }
      }
    }

    // All classes: multisets of indecomposables, ordered like the dimension vectors.
    for (const auto& d : dims) {
      for (const auto& ms : multisets(d)) {
        cat.summands.push_back(ms);
        cat.reps.push_back(sum_of(ms));
      }
    }
    return cat;
  }
}

}  // namespace siltlab
