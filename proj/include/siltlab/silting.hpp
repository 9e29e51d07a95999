#pragma once

// Two-term (pre)silting complexes: recognition, irreducible mutation,
// Bongartz completion, the exact row 0 -> A -> T1 -> T2 -> 0, and the
// translation to torsion classes.
//
// Mutation convention: left mutation replaces X by the cone of its minimal
// left add(T/X)-approximation and makes the torsion class smaller.

#include <numeric>

#include "siltlab/decompose.hpp"

namespace siltlab {

template <class K>
struct SiltingComplex {
  Complex<K> complex;                          // basic representative, sum of the summands
  std::vector<Complex<K>> summands;            // pairwise non-isomorphic indecomposables
  std::vector<std::vector<long long>> gvecs;   // g-vectors of the summands

  int size() const { return static_cast<int>(summands.size()); }
  std::vector<long long> g() const { return g_vector(complex); }
  std::vector<CPtr<K>> shared_summands() const {
    std::vector<CPtr<K>> out;
    for (const auto& s : summands) out.push_back(share(s));
    return out;
  }
};

template <class K>
bool is_presilting(const Complex<K>& x) {
  auto m = minimal_form(x);
  if (!m.is_two_term()) return false;
  return hom_dim(m, m, 1) == 0;
}

namespace detail {

template <class K>
SiltingComplex<K> from_classes(const AlgebraPtr& alg, std::vector<std::pair<Complex<K>, int>> classes) {
  SiltingComplex<K> t;
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return canonical_key(a.first) < canonical_key(b.first); });
  t.complex = zero_complex<K>(alg);
  for (auto& [c, m] : classes) {
    t.complex = direct_sum(t.complex, c);
    t.gvecs.push_back(g_vector(c));
    t.summands.push_back(std::move(c));
  }
  return t;
}

}  // namespace detail

/// Basic presilting object with its summands; NotPresilting otherwise.
template <class K>
SiltingComplex<K> make_presilting(const Complex<K>& x) {
  auto m = minimal_form(x);
  if (m.is_zero()) throw NotPresilting("zero complex");
  if (!m.is_two_term()) throw NotPresilting("complex is not two-term");
  if (hom_dim(m, m, 1) != 0) throw NotPresilting("Hom(X, X[1]) != 0");
  return detail::from_classes(x.alg, decompose_grouped(m));
}

template <class K>
SiltingComplex<K> make_silting(const Complex<K>& x) {
  auto m = minimal_form(x);
  if (!m.is_two_term()) throw NotSilting("complex is not two-term");
  if (hom_dim(m, m, 1) != 0) throw NotSilting("Hom(T, T[1]) != 0");
  auto t = detail::from_classes(x.alg, decompose_grouped(m));
  if (t.size() != x.alg->num_vertices())
    throw NotSilting("expected " + std::to_string(x.alg->num_vertices()) + " non-isomorphic summands, found " +
                     std::to_string(t.size()));
  return t;
}

template <class K>
bool is_silting(const Complex<K>& x) {
  auto m = minimal_form(x);
  if (!m.is_two_term() || hom_dim(m, m, 1) != 0) return false;
  return static_cast<int>(decompose_grouped(m).size()) == x.alg->num_vertices();
}

enum class Direction { left, right };

/// Irreducible mutation at summand j.
template <class K>
SiltingComplex<K> mutate(const SiltingComplex<K>& t, int j, Direction dir) {
  if (j < 0 || j >= t.size()) throw InvalidInput("summand index out of range");
  auto x = share(t.summands[j]);
  std::vector<CPtr<K>> others;
  for (int i = 0; i < t.size(); ++i)
    if (i != j) others.push_back(share(t.summands[i]));
  Complex<K> y;
  if (dir == Direction::left) {
    auto ap = left_approximation(x, others);
    y = minimal_form(cone(ap.map));
  } else {
    auto ap = right_approximation(x, others);
    y = minimal_form(cocone(ap.map));
  }
  if (!y.is_two_term()) throw NotTwoTerm("mutation leaves the two-term window");
  auto classes = decompose_grouped(y);
  if (classes.size() != 1) throw NotSilting("mutation produced " + std::to_string(classes.size()) + " summand classes");
  Complex<K> sum = classes[0].first;
  for (const auto& o : others) sum = direct_sum(sum, *o);
  return make_silting(sum);
}

// ---- degreewise splittings ------------------------------------------------------

/// Every component has a top of full row rank (split injective between projectives).
template <class K>
bool is_degreewise_split_mono(const ChainMap<K>& f) {
  const auto& A = *f.src->alg;
  if (f.src->is_zero()) return true;
  for (int k = f.src->lo; k <= f.src->hi(); ++k) {
    auto t = top_matrix(f.at(k), A);
    if (rank(t) != t.rows) return false;
  }
  return true;
}

/// r with f r = 1 in every degree of the source.
template <class K>
std::map<int, PathMatrix<K>> retraction(const ChainMap<K>& f) {
  const auto& A = *f.src->alg;
  std::map<int, PathMatrix<K>> out;
  if (f.src->is_zero()) return out;
  for (int k = f.src->lo; k <= f.src->hi(); ++k) {
    auto fk = f.at(k);
    if (fk.nrows() == 0) continue;
    auto t = top_matrix(fk, A);
    Echelon<K> e(t.rows);
    std::vector<int> cols;
    for (int j = 0; j < t.cols; ++j)
      if (e.insert(t.col_sparse(j))) cols.push_back(j);
    if (static_cast<int>(cols.size()) != t.rows) throw ApproximationNotMono("map is not degreewise split injective");
    Mat<K> sq(t.rows, t.rows);
    for (int i = 0; i < t.rows; ++i)
      for (int c = 0; c < t.rows; ++c) sq(i, c) = t(i, cols[c]);
    auto si = inverse(sq);
    Mat<K> rb(t.cols, t.rows);
    for (int c = 0; c < t.rows; ++c)
      for (int i = 0; i < t.rows; ++i) rb(cols[c], i) = (*si)(c, i);
    PathMatrix<K> rbar = scalar_matrix(fk.cols, fk.rows, rb);
    out[k] = mul(rbar, invert_unit(mul(fk, rbar, A), A), A);
  }
  return out;
}

template <class K>
struct Cokernel {
  CPtr<K> z;
  ChainMap<K> p;                          // X -> Z
  std::map<int, PathMatrix<K>> section;  // Z^k -> X^k with section p = 1
};

/// Degreewise cokernel of a degreewise split mono f : W -> X.
template <class K>
Cokernel<K> cokernel(const ChainMap<K>& f) {
  const auto& A = *f.src->alg;
  auto r = retraction(f);
  const auto& x = f.tgt;
  ChainMap<K> e{x, x, {}};
  for (int k = x->lo; k <= x->hi(); ++k) {
    auto id = PathMatrix<K>::identity(x->term(k));
    auto it = r.find(k);
    if (it == r.end())
      e.set(k, id);
    else
      e.set(k, add(id, mul(it->second, f.at(k), A), K(-1)));
  }
  auto s = split_idempotent(e, x);
  Cokernel<K> c;
  c.z = s.iota.src;
  c.p = s.pi;
  c.p.tgt = c.z;
  for (const auto& [k, m] : s.iota.f) c.section[k] = m;
  return c;
}

// ---- exact rows and Bongartz completion --------------------------------------------

template <class K>
struct ExactRow {
  CPtr<K> a, v1, v2;
  ChainMap<K> lambda;  // A -> V1
  ChainMap<K> p;       // V1 -> V2
  std::map<int, PathMatrix<K>> retract;  // V1^k -> A^k
  std::map<int, PathMatrix<K>> section;  // V2^k -> V1^k
};

/// Map from X into the disk (P =id P) placed in degrees [k-1, k], where P is
/// the part of X^k picked out by `keep` (indices into X^k).
template <class K>
ChainMap<K> disk_map(const CPtr<K>& x, int k, const CPtr<K>& dk, const std::vector<int>& keep) {
  const auto& A = *x->alg;
  std::vector<int> all(x->term(k).size());
  std::iota(all.begin(), all.end(), 0);
  auto proj = select(PathMatrix<K>::identity(x->term(k)), all, keep);
  ChainMap<K> m{x, dk, {}};
  m.set(k - 1, mul(x->diff(k - 1), proj, A));
  m.set(k, proj);
  return m;
}

/// Make f : X -> Y degreewise split injective by adjoining the fewest disks on the target.
template <class K>
ChainMap<K> pad_to_split_mono(const ChainMap<K>& f) {
  const auto& A = *f.src->alg;
  ChainMap<K> g = f;
  if (f.src->is_zero()) return g;
  for (int k = f.src->lo; k <= f.src->hi(); ++k) {
    auto t = top_matrix(g.at(k), A);
    if (rank(t) == t.rows) continue;
    Echelon<K> e(t.rows);
    for (int j = 0; j < t.cols; ++j) e.insert(t.col_sparse(j));
    std::vector<int> keep, verts;
    for (int r = 0; r < t.rows; ++r)
      if (e.insert(SVec<K>{{r, K(1)}})) {
        keep.push_back(r);
        verts.push_back(f.src->term(k)[r]);
      }
    auto dk = share(disk<K>(f.src->alg, verts, k - 1));
    auto sum = share(direct_sum(*g.tgt, *dk));
    g = map_into_sum(g, disk_map(f.src, k, dk, keep), sum);
  }
  return g;
}

template <class K>
ExactRow<K> make_row(const ChainMap<K>& lambda) {
  ExactRow<K> r;
  r.a = lambda.src;
  r.lambda = lambda;
  r.v1 = lambda.tgt;
  r.retract = retraction(lambda);
  auto c = cokernel(lambda);
  r.v2 = c.z;
  r.p = c.p;
  r.section = c.section;
  return r;
}

/// 0 -> A -> T1 -> T2 -> 0 with T1, T2 in add(T) up to contractible summands.
template <class K>
ExactRow<K> bongartz_triangle(const SiltingComplex<K>& t) {
  auto alg = t.complex.alg;
  auto a = share(regular_stalk<K>(alg));
  auto ap = left_approximation(a, t.shared_summands());
  auto lambda = pad_to_split_mono(ap.map);
  auto row = make_row(lambda);
  if (!in_add(*row.v2, t.summands)) throw ConeNotInAddT("cokernel of the approximation is not in add(T)");
  return row;
}

template <class K>
struct BongartzCompletion {
  Complex<K> raw;            // U' = cocone of the right add(U)-approximation of A[1]
  Complex<K> ubar;           // source of that approximation
  SiltingComplex<K> silting; // basic U + U'
};

template <class K>
BongartzCompletion<K> bongartz_complement(const Complex<K>& u) {
  auto pu = make_presilting(u);
  auto alg = u.alg;
  auto a1 = share(regular_stalk<K>(alg, -1));
  auto ap = right_approximation(a1, pu.shared_summands());
  auto raw = minimal_form(cocone(ap.map));
  if (!raw.is_two_term()) throw NotTwoTerm("Bongartz complement is not two-term");
  BongartzCompletion<K> b{raw, ap.target, make_silting(direct_sum(pu.complex, raw))};
  return b;
}

// ---- torsion classes ----------------------------------------------------------------

template <class K>
struct TorsionData {
  Representation<K> h0;        // generator of the torsion class
  Representation<K> hminus1;   // H^{-1}(nu T), generator of the torsion-free side
};

template <class K>
TorsionData<K> torsion_data(const Complex<K>& t) {
  return {H0(t), Hminus1_nu(t)};
}

/// M lies in the aisle of T: M in Fac H^0(T).
template <class K, class K2>
bool in_aisle_module(const Complex<K>& t, const Representation<K2>& m) {
  if constexpr (std::is_same_v<K, K2>) {
    return in_fac(H0(t), m);
  } else {
    return in_fac(H0(convert<K2>(t)), m);
  }
}

/// T_next lies in the aisle of T_prev: Hom(T_prev, T_next[1]) = 0.
template <class K>
bool is_nested(const Complex<K>& next, const Complex<K>& prev) {
  return hom_dim(prev, next, 1) == 0;
}

}  // namespace siltlab
