#pragma once

// The directed system attached to a nested chain T_0, T_1, ... of two-term
// silting complexes (Hom(T_i, T_{i+1}[1]) = 0), built stage by stage:
//
//        0 -> A --lambda_i--> V1_i --p_i--> V2_i -> 0
//             ||              |t_i          |t'_i
//        0 -> A --lambda'---> V1_{i+1} ---> V2_{i+1} -> 0
//
// Rows are degreewise split exact, squares commute on the nose, t_i and t'_i
// are degreewise split monomorphisms, and T'_i = V1_i + V2_i has the same
// additive closure as T_i. For two-term silting the resolution of A by add(T)
// has one step, so each row is a single short exact sequence.
//
// Certificate. For a degreewise split mono t : V -> W with cokernel Z, the
// class of Y with Hom(Z, Y[1]) = 0 contains Y = T_{i+1}. It is closed under
// extensions, coproducts (Z is compact) and positive shifts, and
// Hom(Z, T[n]) = 0 for n >= 2 by degrees, so Hom(Z, T_{i+1}[1]) = 0 alone
// puts Z in the left Ext-orthogonal of the aisle of T_{i+1}.

#include "siltlab/stability.hpp"

namespace siltlab {

template <class K>
struct NestedChain {
  std::vector<SiltingComplex<K>> t;
  int size() const { return static_cast<int>(t.size()); }
};

template <class K>
NestedChain<K> make_chain(std::vector<SiltingComplex<K>> ts) {
  if (ts.empty()) throw InvalidInput("empty chain");
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (!is_nested(ts[i + 1].complex, ts[i].complex))
      throw NestednessViolation("T_" + std::to_string(i + 1) + " is not in the aisle of T_" + std::to_string(i));
  return {std::move(ts)};
}

/// T_0 = A and T_{i+1} the left mutation of T_i at its summand with the largest first g-coordinate.
inline NestedChain<Q> kronecker_chain(int i_max) {
  if (i_max < 0) throw InvalidInput("negative chain length");
  auto alg = kronecker();
  std::vector<SiltingComplex<Q>> ts{make_silting(regular_stalk<Q>(alg))};
  for (int i = 1; i <= i_max; ++i) {
    const auto& cur = ts.back();
    int j = 0;
    for (int s = 1; s < cur.size(); ++s)
      if (cur.gvecs[s][0] > cur.gvecs[j][0]) j = s;
    ts.push_back(mutate(cur, j, Direction::left));
  }
  for (int i = 0; i <= i_max; ++i) {
    long long n = i;
    if (ts[i].g() != std::vector<long long>{-(2 * n - 1), 2 * n + 1})
      throw LinearSolveFailure("unexpected g-vector in the Kronecker chain");
  }
  return make_chain(std::move(ts));
}

template <class K>
ExactRow<K> build_stage_row(const SiltingComplex<K>& t) {
  return bongartz_triangle(t);
}

struct StageCertificates {
  bool chain_maps = false;       // t, t' commute with differentials
  bool rows_exact = false;       // next row is degreewise split exact
  bool squares_commute = false;  // lambda t = lambda', t p' = p t'
  bool t_split_mono = false;
  bool tp_split_mono = false;
  int hom_z = -1;                // dim Hom(Z, T_next[1])
  int hom_zp = -1;               // dim Hom(Z', T_next[1])
  bool t_surjective = false;     // Hom(t, W) onto for W in the summands of T_next
  bool tp_surjective = false;
  bool all() const {
    return chain_maps && rows_exact && squares_commute && t_split_mono && tp_split_mono && hom_z == 0 &&
           hom_zp == 0 && t_surjective && tp_surjective;
  }
};

template <class K>
struct DiagramStage {
  int index = 0;
  ExactRow<K> row;   // row i
  ExactRow<K> next;  // row i+1
  ChainMap<K> t, tp;
  CPtr<K> z, zp;
  StageCertificates cert;
};

namespace detail {

/// Hom(f, W) : Hom(Y, W) -> Hom(X, W) is onto, for f : X -> Y.
template <class K>
bool hom_surjective(const ChainMap<K>& f, const CPtr<K>& w) {
  auto hx = hom_k(f.src, w);
  if (hx.dim() == 0) return true;
  auto hy = hom_k(f.tgt, w);
  Mat<K> m(hy.dim(), hx.dim());
  for (int i = 0; i < hy.dim(); ++i) {
    auto c = hx.coords(compose(f, hy.basis[i]));
    for (int j = 0; j < hx.dim(); ++j) m(i, j) = c[j];
  }
  return rank(m) == hx.dim();
}

template <class K>
bool row_exact(const ExactRow<K>& r) {
  const auto& A = *r.a->alg;
  if (!is_chain_map(r.lambda) || !is_chain_map(r.p)) return false;
  if (!compose(r.lambda, r.p).f.empty()) return false;
  for (int k = std::min(r.v1->lo, r.a->lo); k <= std::max(r.v1->hi(), r.a->hi()); ++k) {
    if (r.a->term(k).size() + r.v2->term(k).size() != r.v1->term(k).size()) return false;
    auto rt = r.retract.count(k) ? r.retract.at(k) : PathMatrix<K>(r.v1->term(k), r.a->term(k));
    auto sc = r.section.count(k) ? r.section.at(k) : PathMatrix<K>(r.v2->term(k), r.v1->term(k));
    if (!(mul(r.lambda.at(k), rt, A) == PathMatrix<K>::identity(r.a->term(k)))) return false;
    if (!(mul(sc, r.p.at(k), A) == PathMatrix<K>::identity(r.v2->term(k)))) return false;
  }
  return true;
}

}  // namespace detail

/// One vertical step of the diagram: from row i (for T_prev) to row i+1 (for T_next).
template <class K>
DiagramStage<K> special_preenvelope_step(const ExactRow<K>& row, const SiltingComplex<K>& prev,
                                         const SiltingComplex<K>& next, int index = 0, int cap = 4096) {
  if (!is_nested(next.complex, prev.complex))
    throw NestednessViolation("Hom(T_i, T_{i+1}[1]) != 0");
  const auto& A = *row.a->alg;
  auto nrow = build_stage_row(next);  // A --gamma--> U1 --q--> U2

  // s1 lambda = gamma, exactly at chain level
  auto s1 = solve_left_factor(row.lambda, nrow.v1, nrow.lambda);
  if (!s1) throw NestednessViolation("gamma does not factor through lambda");
  // induced map on cokernels: s1' = sigma s1 q
  ChainMap<K> s1p{row.v2, nrow.v2, {}};
  for (int k = row.v2->lo; k <= row.v2->hi(); ++k) {
    auto it = row.section.find(k);
    if (it == row.section.end()) continue;
    s1p.set(k, mul(mul(it->second, s1->at(k), A), nrow.p.at(k), A));
  }
  if (!is_chain_map(s1p) || !maps_equal(compose(row.p, s1p), compose(*s1, nrow.p)))
    throw LinearSolveFailure("induced map on cokernels is inconsistent");

  auto ap = left_approximation(row.v2, next.shared_summands(), std::optional<ChainMap<K>>(s1p));
  auto j1 = pad_to_split_mono(ap.map);
  auto ubar = j1.tgt;

  auto w1 = share(direct_sum(*nrow.v1, *ubar));
  auto w2 = share(direct_sum(*nrow.v2, *ubar));
  if (w1->size() + w2->size() > cap)
    throw BudgetExceeded("stage " + std::to_string(index + 1) + " exceeds the multiplicity cap");

  DiagramStage<K> st;
  st.index = index;
  st.row = row;
  st.t = map_into_sum(*s1, compose(row.p, j1), w1);
  st.tp = map_into_sum(s1p, j1, w2);

  ExactRow<K> nx;
  nx.a = row.a;
  nx.v1 = w1;
  nx.v2 = w2;
  nx.lambda = map_into_sum(nrow.lambda, zero_map(row.a, ubar), w1);
  nx.p = diag_map(nrow.p, identity_map(ubar), w1, w2);
  for (int k = w1->lo; k <= w1->hi(); ++k) {
    auto rg = nrow.retract.count(k) ? nrow.retract.at(k) : PathMatrix<K>(nrow.v1->term(k), row.a->term(k));
    nx.retract[k] = vstack(rg, PathMatrix<K>(ubar->term(k), row.a->term(k)));
  }
  for (int k = w2->lo; k <= w2->hi(); ++k) {
    auto sq = nrow.section.count(k) ? nrow.section.at(k) : PathMatrix<K>(nrow.v2->term(k), nrow.v1->term(k));
    nx.section[k] = diag(sq, PathMatrix<K>::identity(ubar->term(k)));
  }
  st.next = nx;

  auto& c = st.cert;
  c.chain_maps = is_chain_map(st.t) && is_chain_map(st.tp);
  c.rows_exact = detail::row_exact(nx);
  c.squares_commute =
      maps_equal(compose(row.lambda, st.t), nx.lambda) && maps_equal(compose(st.t, nx.p), compose(row.p, st.tp));
  c.t_split_mono = is_degreewise_split_mono(st.t);
  c.tp_split_mono = is_degreewise_split_mono(st.tp);
  if (c.t_split_mono) {
    st.z = cokernel(st.t).z;
    c.hom_z = hom_dim(*st.z, next.complex, 1);
  }
  if (c.tp_split_mono) {
    st.zp = cokernel(st.tp).z;
    c.hom_zp = hom_dim(*st.zp, next.complex, 1);
  }
  c.t_surjective = c.tp_surjective = true;
  for (const auto& w : next.shared_summands()) {
    c.t_surjective = c.t_surjective && detail::hom_surjective(st.t, w);
    c.tp_surjective = c.tp_surjective && detail::hom_surjective(st.tp, w);
  }
  if (c.hom_z > 0 || c.hom_zp > 0) throw NestednessViolation("cokernel certificate Hom(Z, T_{i+1}[1]) != 0");
  return st;
}

template <class K>
struct DirectedSystem {
  NestedChain<K> chain;
  std::vector<ExactRow<K>> rows;         // one per chain element
  std::vector<DiagramStage<K>> stages;   // stage i: row i -> row i+1
  std::vector<CPtr<K>> objects;          // T'_i = V1_i + V2_i
  std::vector<ChainMap<K>> maps;         // f_i : T'_i -> T'_{i+1}
  std::vector<ChainMap<K>> composed;     // f_{0 -> i} : T'_0 -> T'_i
  std::vector<bool> add_equivalent;      // add(T'_i) = add(T_i)
  bool composites_consistent = false;
  int truncated_at = -1;                 // first stage over the cap (partial builds only)
};

/// With partial = true a stage over the cap ends the system there instead of throwing.
template <class K>
DirectedSystem<K> build_system(const NestedChain<K>& chain, int cap = 4096, bool partial = false) {
  DirectedSystem<K> s;
  s.chain = chain;
  s.rows.push_back(build_stage_row(chain.t[0]));
  for (int i = 0; i + 1 < chain.size(); ++i) {
    try {
      s.stages.push_back(special_preenvelope_step(s.rows.back(), chain.t[i], chain.t[i + 1], i, cap));
    } catch (const BudgetExceeded&) {
      if (!partial) throw;
      s.truncated_at = i;
      s.chain.t.resize(i + 1);
      break;
    }
    s.rows.push_back(s.stages.back().next);
  }
  for (const auto& r : s.rows) s.objects.push_back(share(direct_sum(*r.v1, *r.v2)));
  for (int i = 0; i < s.chain.size(); ++i) {
    auto d = decompose_over(*s.objects[i], chain.t[i].summands);
    bool ok = d.complete;
    for (int m : d.mult) ok = ok && m > 0;
    s.add_equivalent.push_back(ok);
  }
  s.composed.push_back(identity_map(s.objects[0]));
  s.composites_consistent = true;
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    const auto& st = s.stages[i];
    s.maps.push_back(diag_map(st.t, st.tp, s.objects[i], s.objects[i + 1]));
    auto next = compose(s.composed.back(), s.maps.back());
    s.composites_consistent = s.composites_consistent && is_chain_map(next);
    s.composed.push_back(std::move(next));
  }
  return s;
}

// ---- checks over finite test sets ------------------------------------------------------

struct MLReport {
  struct Entry {
    int module = 0;
    int stage = 0;   // map Hom(T'_{stage+1}, X) -> Hom(T'_stage, X)
    int dim_src = 0;
    int dim_tgt = 0;
    int rank = 0;
    bool surjective() const { return rank == dim_tgt; }
  };
  std::vector<int> invalid;  // test modules outside the aisle of the last T_i
  std::vector<Entry> entries;
  bool passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.surjective(); });
  }
};

namespace detail {

template <class K2, class K>
ChainMap<K2> convert_map(const ChainMap<K>& f, const CPtr<K2>& src, const CPtr<K2>& tgt) {
  ChainMap<K2> g{src, tgt, {}};
  for (const auto& [k, m] : f.f) g.set(k, convert<K2>(m));
  return g;
}

/// Rank of Hom(f, M) : Hom_K(Y, M) -> Hom_K(X, M) for f : X -> Y and a module M.
template <class K>
int hom_module_rank(const ChainMap<K>& f, const ModuleHom<K>& hx, const ModuleHom<K>& hy, const Representation<K>& m) {
  if (hx.dim == 0 || hy.dim == 0) return 0;
  Mat<K> pre = precompose_matrix(f.at(0), m);  // rows Hom(X^0, M), cols Hom(Y^0, M)
  Mat<K> img(hy.dim, hx.dim);
  for (int b = 0; b < hy.dim; ++b) {
    std::vector<K> phi(pre.rows, K(0));
    for (int i = 0; i < pre.rows; ++i)
      for (int j = 0; j < pre.cols; ++j)
        if (!is_zero(pre(i, j))) phi[i] += pre(i, j) * hy.basis[b][j];
    auto c = module_hom_coords(hx, phi);
    for (int j = 0; j < hx.dim; ++j) img(b, j) = c[j];
  }
  return rank(img);
}

}  // namespace detail

template <class K, class K2>
MLReport mittag_leffler_check(const DirectedSystem<K>& s, const std::vector<Representation<K2>>& tests) {
  MLReport r;
  std::vector<CPtr<K2>> objs;
  std::vector<ChainMap<K2>> maps;
  for (const auto& o : s.objects) {
    if constexpr (std::is_same_v<K, K2>)
      objs.push_back(o);
    else
      objs.push_back(share(convert<K2>(*o)));
  }
  for (std::size_t i = 0; i < s.maps.size(); ++i) {
    if constexpr (std::is_same_v<K, K2>)
      maps.push_back(s.maps[i]);
    else
      maps.push_back(detail::convert_map<K2>(s.maps[i], objs[i], objs[i + 1]));
  }
  auto h0 = H0(convert<K2>(s.chain.t.back().complex));
  for (std::size_t x = 0; x < tests.size(); ++x) {
    if (!in_fac(h0, tests[x])) {
      r.invalid.push_back(static_cast<int>(x));
      continue;
    }
    std::vector<ModuleHom<K2>> hs;
    for (const auto& o : objs) hs.push_back(hom_to_module(*o, tests[x], 0));
    for (std::size_t i = 0; i < maps.size(); ++i) {
      MLReport::Entry e;
      e.module = static_cast<int>(x);
      e.stage = static_cast<int>(i);
      e.dim_src = hs[i + 1].dim;
      e.dim_tgt = hs[i].dim;
      e.rank = detail::hom_module_rank(maps[i], hs[i], hs[i + 1], tests[x]);
      r.entries.push_back(e);
    }
  }
  return r;
}

/// c_i > 0 with theta <= c_k g_k <= ... <= c_0 g_0 componentwise (theta^i = c_i g_i),
/// chosen greedily from the end; nullopt when the greedy choice fails.
inline std::optional<std::vector<Q>> chain_scalings(const std::vector<std::vector<long long>>& gs, const Theta& th) {
  const int n = static_cast<int>(gs.size());
  std::vector<Q> c(n);
  Theta lower = th;
  for (int i = n - 1; i >= 0; --i) {
    std::optional<Q> lo, hi;
    lo = Q(0);
    for (std::size_t v = 0; v < th.size(); ++v) {
      Q g(static_cast<long>(gs[i][v]));
      if (g > 0) {
        Q b = lower[v] / g;
        if (b > *lo) lo = b;
      } else if (g < 0) {
        Q b = lower[v] / g;
        if (!hi || b < *hi) hi = b;
      } else if (lower[v] > 0) {
        return std::nullopt;
      }
    }
    Q ci = *lo;
    if (ci == 0) ci = hi ? *hi / 2 : Q(1);
    if (hi && ci > *hi) return std::nullopt;
    if (ci <= 0) return std::nullopt;
    c[i] = ci;
    for (std::size_t v = 0; v < th.size(); ++v) lower[v] = ci * Q(static_cast<long>(gs[i][v]));
  }
  return c;
}

template <class K>
struct TorsionReport {
  int modules = 0;
  std::vector<int> stage_sizes;  // |S_k|
  int target_size = 0;           // |B|
  bool sandwich = true;          // B contained in every S_k
  int stabilized_at = -1;        // first k with S_k = B
  std::vector<Representation<K>> residual;
  bool chain_consistent = false;
  std::vector<char> in_limit;    // per module of the catalog: in S_last
  std::vector<char> in_target;   // per module: in B
};

/// Compare the stagewise aisle intersections with the numerical torsion class of theta.
template <class K, class KT>
TorsionReport<K> limit_torsion_class(const NestedChain<KT>& chain, const Theta& th,
                                      const std::vector<Representation<K>>& reps, long long budget = 2000000) {
  TorsionReport<K> r;
  std::vector<std::vector<long long>> gs;
  for (const auto& t : chain.t) gs.push_back(t.g());
  r.chain_consistent = chain_scalings(gs, th).has_value();
  std::vector<Representation<K>> h0s;
  for (const auto& t : chain.t) h0s.push_back(H0(convert<K>(t.complex)));
  r.modules = static_cast<int>(reps.size());
  std::vector<char> alive(reps.size(), 1);
  r.in_target.resize(reps.size());
  for (std::size_t m = 0; m < reps.size(); ++m) {
    r.in_target[m] = in_Tbar(th, reps[m], budget);
    if (r.in_target[m]) ++r.target_size;
  }
  for (std::size_t k = 0; k < h0s.size(); ++k) {
    int cnt = 0;
    bool equal = true;
    for (std::size_t m = 0; m < reps.size(); ++m) {
      if (alive[m]) alive[m] = in_fac(h0s[k], reps[m]);
      cnt += alive[m];
      if (r.in_target[m] && !alive[m]) r.sandwich = false;
      if (alive[m] != r.in_target[m]) equal = false;
    }
    r.stage_sizes.push_back(cnt);
    if (equal && r.stabilized_at < 0) r.stabilized_at = static_cast<int>(k);
  }
  r.in_limit.assign(alive.begin(), alive.end());
  for (std::size_t m = 0; m < reps.size(); ++m)
    if (alive[m] && !r.in_target[m]) r.residual.push_back(reps[m]);
  return r;
}

template <class K>
struct BongartzReport {
  SiltingComplex<Q> completion;     // basic U + U'
  int m = 0;                        // [U + U'] = m [U] + [A]
  std::vector<Theta> thetas;        // theta^i, i = m .. m+k-1
  std::vector<bool> in_bongartz;    // chamber of theta^i is that of U + U'
  bool sequence_gvectors = true;    // [U^(i-m+1) + U'] = i theta^i
  TorsionReport<K> torsion;
};

/// The Remark sequence theta^i = [U] + (1/i)[A] for indecomposable presilting U.
template <class K>
BongartzReport<K> bongartz_limit_check(const Complex<Q>& u, int k, const DimVector& bound, int budget = 256) {
  auto pu = make_presilting(u);
  auto b = bongartz_complement(u);
  const auto alg = u.alg;
  const int l = alg->num_vertices();
  BongartzReport<K> r;
  r.completion = b.silting;
  auto gu = g_vector(pu.complex);
  auto graw = g_vector(b.raw);
  // [U'] = (m - 1)[U] + [A]
  std::optional<long long> mm;
  for (int v = 0; v < l; ++v) {
    long long rest = graw[v] - 1;
    if (gu[v] == 0) {
      if (rest != 0) throw InvalidInput("[U'] - [A] is not a multiple of [U]");
      continue;
    }
    if (rest % gu[v] != 0) throw InvalidInput("[U'] - [A] is not an integer multiple of [U]");
    long long q = rest / gu[v];
    if (mm && *mm != q) throw InvalidInput("[U'] - [A] is not a multiple of [U]");
    mm = q;
  }
  r.m = static_cast<int>(mm.value_or(0)) + 1;
  if (r.m < 1) r.m = 1;
  ChamberWalker<Q> walker(alg, budget);
  std::vector<SiltingComplex<Q>> ts;
  for (int i = r.m; i < r.m + k; ++i) {
    Theta th = theta_from(gu);
    for (auto& x : th) x += Q(1, i);
    r.thetas.push_back(th);
    auto t = walker.locate(th);
    bool same = t && t->gvecs == b.silting.gvecs;
    r.in_bongartz.push_back(same);
    // T_i = U^(i-m+1) + U' has class i [U] + [A]
    auto ti = direct_sum(power(pu.complex, i - r.m + 1), b.raw);
    auto gi = g_vector(ti);
    for (int v = 0; v < l; ++v)
      if (Q(static_cast<long>(gi[v])) != Q(i) * th[v]) r.sequence_gvectors = false;
    ts.push_back(b.silting);
  }
  auto cat = enumerate_reps<K>(alg, bound);
  r.torsion = limit_torsion_class(make_chain(ts), theta_from(gu), cat.reps);
  return r;
}

}  // namespace siltlab
