#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "siltlab/algebra.hpp"
#include "siltlab/module.hpp"

using namespace siltlab;

namespace {

// Count module maps X -> Y over F_2 by trying every tuple of vertex matrices.
template <class K>
long long brute_hom_count(const Representation<K>& x, const Representation<K>& y) {
  const auto& A = *x.alg;
  int bits = 0;
  for (int v = 0; v < A.num_vertices(); ++v) bits += x.dim[v] * y.dim[v];
  REQUIRE(bits <= 20);
  long long count = 0;
  for (long long mask = 0; mask < (1LL << bits); ++mask) {
    ModuleMap<K> f;
    int bit = 0;
    for (int v = 0; v < A.num_vertices(); ++v) {
      Mat<K> m(y.dim[v], x.dim[v]);
      for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) = K((mask >> bit++) & 1);
      f.f.push_back(m);
    }
    count += is_module_map(f, x, y);
  }
  return count;
}

// Every tuple of subspaces, checked for invariance directly.
std::set<DimVector> brute_submodules_f2(const Representation<GF2>& x) {
  const auto& A = *x.alg;
  const int l = A.num_vertices();
  // all subsets of vectors of F_2^d closed under addition = subspaces, stored as bitmasks of members
  auto subspaces = [](int d) {
    std::vector<std::vector<int>> out;
    int n = 1 << d;
    for (long long members = 0; members < (1LL << n); ++members) {
      if (!(members & 1)) continue;
      bool closed = true;
      for (int a = 0; a < n && closed; ++a)
        for (int b = 0; b < n && closed; ++b)
          if ((members >> a & 1) && (members >> b & 1) && !(members >> (a ^ b) & 1)) closed = false;
      if (!closed) continue;
      std::vector<int> v;
      for (int a = 0; a < n; ++a)
        if (members >> a & 1) v.push_back(a);
      out.push_back(v);
    }
    return out;
  };
  std::vector<std::vector<std::vector<int>>> subs(l);
  for (int v = 0; v < l; ++v) subs[v] = subspaces(x.dim[v]);
  std::set<DimVector> out;
  std::vector<int> pick(l, 0);
  while (true) {
    bool ok = true;
    for (int a = 0; a < A.num_arrows() && ok; ++a) {
      int s = A.arrow_src(a), t = A.arrow_tgt(a);
      for (int vec : subs[t][pick[t]]) {
        int img = 0;
        for (int i = 0; i < x.dim[s]; ++i) {
          int bit = 0;
          for (int j = 0; j < x.dim[t]; ++j) bit ^= (x.mats[a](i, j).v & (vec >> j & 1));
          img |= bit << i;
        }
        const auto& target = subs[s][pick[s]];
        if (!std::binary_search(target.begin(), target.end(), img)) ok = false;
      }
    }
    if (ok) {
      DimVector d;
      for (int v = 0; v < l; ++v) d.push_back(static_cast<int>(std::log2(subs[v][pick[v]].size()) + 0.5));
      out.insert(d);
    }
    int v = 0;
    while (v < l && ++pick[v] == static_cast<int>(subs[v].size())) pick[v++] = 0;
    if (v == l) break;
  }
  return out;
}

Representation<GF2> kron_rep_f2(int a, int b) {
  auto alg = kronecker();
  Representation<GF2> r = zero_rep<GF2>(alg);
  r.dim = {1, 1};
  r.mats = {Mat<GF2>(1, 1), Mat<GF2>(1, 1)};
  r.mats[0](0, 0) = GF2(a);
  r.mats[1](0, 0) = GF2(b);
  return r;
}

// Orbits of GL(d_1) x GL(d_2) on Kronecker representations of dimension d over F_2.
int brute_orbits_kronecker_f2(int d1, int d2) {
  auto invertibles = [](int n) {
    std::vector<Mat<GF2>> out;
    for (int mask = 0; mask < (1 << (n * n)); ++mask) {
      Mat<GF2> m(n, n);
      for (int i = 0; i < n * n; ++i) m.a[i] = GF2(mask >> i & 1);
      if (inverse(m)) out.push_back(m);
    }
    return out;
  };
  auto g1 = invertibles(d1), g2 = invertibles(d2);
  const int bits = 2 * d1 * d2;
  auto decode = [&](int mask) {
    std::pair<Mat<GF2>, Mat<GF2>> p{Mat<GF2>(d1, d2), Mat<GF2>(d1, d2)};
    for (int i = 0; i < d1 * d2; ++i) {
      p.first.a[i] = GF2(mask >> i & 1);
      p.second.a[i] = GF2(mask >> (d1 * d2 + i) & 1);
    }
    return p;
  };
  auto encode = [&](const Mat<GF2>& a, const Mat<GF2>& b) {
    int mask = 0;
    for (int i = 0; i < d1 * d2; ++i) mask |= static_cast<int>(a.a[i].v) << i | static_cast<int>(b.a[i].v) << (d1 * d2 + i);
    return mask;
  };
  std::vector<char> seen(1 << bits, 0);
  int orbits = 0;
  for (int m = 0; m < (1 << bits); ++m) {
    if (seen[m]) continue;
    ++orbits;
    auto [a, b] = decode(m);
    for (const auto& x : g1)
      for (const auto& y : g2) seen[encode(x * a * y, x * b * y)] = 1;
  }
  return orbits;
}

// Closed points of degree d on the projective line over F_q.
long long points_of_degree(long long q, int d) {
  if (d == 1) return q + 1;
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    if (n > 1) m = -m;
    return m;
  };
  long long s = 0;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) {
      long long pw = 1;
      for (int k = 0; k < e; ++k) pw *= q;
      s += mobius(d / e) * pw;
    }
  return s / d;
}

}  // namespace

TEST_CASE("path bases") {
  auto k = kronecker();
  CHECK(k->dim() == 4);
  CHECK(k->num_vertices() == 2);
  CHECK(k->path_name(0) == "e1");
  CHECK(k->path_name(2) == "a");
  auto a = a2();
  CHECK(a->dim() == 3);
  CHECK(linear_an(3)->dim() == 6);

  Quiver loop;
  loop.vertices = {1};
  loop.arrows = {{"x", 1, 1}};
  CHECK_THROWS_AS(build_algebra(loop), CyclicQuiver);
  Quiver cyc;
  cyc.vertices = {1, 2};
  cyc.arrows = {{"x", 1, 2}, {"y", 2, 1}};
  CHECK_THROWS_AS(build_algebra(cyc), CyclicQuiver);
  Quiver bad;
  bad.vertices = {1};
  bad.arrows = {{"x", 1, 3}};
  CHECK_THROWS_AS(build_algebra(bad), InvalidInput);
}

TEST_CASE("relations cut down the basis") {
  // 1 -a-> 2 -b-> 3 with ab = 0: basis e1 e2 e3 a b
  Quiver q;
  q.vertices = {1, 2, 3};
  q.arrows = {{"a", 1, 2}, {"b", 2, 3}};
  auto alg = build_algebra(q, {{RelationTerm{{"a", "b"}, Q(1)}}});
  CHECK(alg->dim() == 5);
  CHECK(alg->mul<Q>(alg->arrow_basis(0), alg->arrow_basis(1)).empty());
  auto p1 = projective<Q>(alg, 2);  // paths into 3
  CHECK(p1.dim == DimVector{0, 1, 1});
  p1.validate();

  // commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with ac = bd
  Quiver sq;
  sq.vertices = {1, 2, 3, 4};
  sq.arrows = {{"a", 1, 2}, {"b", 1, 3}, {"c", 2, 4}, {"d", 3, 4}};
  auto com = build_algebra(sq, {{RelationTerm{{"a", "c"}, Q(1)}, RelationTerm{{"b", "d"}, Q(-1)}}});
  CHECK(com->dim() == 4 + 4 + 1);
  CHECK(com->paths_between(0, 3).size() == 1);
  auto p4 = projective<GF3>(com, 3);
  CHECK(p4.dim == DimVector{1, 1, 1, 1});
  p4.validate();
}

TEST_CASE("indecomposable projectives, simples, injectives") {
  auto k = kronecker();
  CHECK(projective<Q>(k, 0).dim == DimVector{1, 0});
  auto p2 = projective<Q>(k, 1);
  CHECK(p2.dim == DimVector{2, 1});
  p2.validate();
  // radical of P_2: the submodule generated at vertex 1 is S_1 + S_1
  Subspaces<Q> rad;
  rad.basis = {Mat<Q>::identity(2), Mat<Q>(1, 0)};
  auto r = sub_representation(p2, rad);
  CHECK(r.dim == DimVector{2, 0});
  CHECK(projective<Q>(a2(), 1).dim == DimVector{1, 1});
  CHECK(simple<Q>(k, 0).dim == DimVector{1, 0});
  CHECK(simple<Q>(k, 1).dim == DimVector{0, 1});
  auto i1 = injective<Q>(k, 0);
  CHECK(i1.dim == DimVector{1, 2});
  i1.validate();
  // I_1 is the dual of the projective of the opposite quiver at vertex 1
  auto op = opposite(*k);
  auto pop = projective<Q>(op, 0);
  CHECK(pop.dim == i1.dim);
  for (int a = 0; a < 2; ++a) CHECK(pop.mats[a].transpose().rows == i1.mats[a].rows);
}

TEST_CASE("hom spaces agree with brute force counting") {
  auto k = kronecker();
  CHECK(hom_space(projective<Q>(k, 0), projective<Q>(k, 1)).size() == 2);
  CHECK(hom_space(simple<Q>(k, 0), simple<Q>(k, 1)).empty());
  CHECK(hom_space(simple<Q>(k, 1), simple<Q>(k, 1)).size() == 1);

  std::vector<Representation<GF2>> mods = {projective<GF2>(k, 0), projective<GF2>(k, 1), injective<GF2>(k, 0),
                                           injective<GF2>(k, 1), kron_rep_f2(1, 0), kron_rep_f2(1, 1),
                                           simple<GF2>(k, 0), simple<GF2>(k, 1)};
  for (const auto& x : mods)
    for (const auto& y : mods) {
      auto basis = hom_space(x, y);
      for (const auto& f : basis) CHECK(is_module_map(f, x, y));
      CHECK((1LL << basis.size()) == brute_hom_count(x, y));
    }
  // field independence on integral fixtures
  std::vector<Representation<Q>> qm = {projective<Q>(k, 0), projective<Q>(k, 1), injective<Q>(k, 0),
                                       injective<Q>(k, 1)};
  std::vector<Representation<GF3>> fm = {projective<GF3>(k, 0), projective<GF3>(k, 1), injective<GF3>(k, 0),
                                         injective<GF3>(k, 1)};
  for (std::size_t i = 0; i < qm.size(); ++i)
    for (std::size_t j = 0; j < qm.size(); ++j) CHECK(hom_space(qm[i], qm[j]).size() == hom_space(fm[i], fm[j]).size());
}

TEST_CASE("trace and Fac") {
  auto k = kronecker();
  auto a_mod = direct_sum(projective<Q>(k, 0), projective<Q>(k, 1));
  for (const auto& x : {simple<Q>(k, 0), simple<Q>(k, 1), injective<Q>(k, 0), projective<Q>(k, 1)})
    CHECK(in_fac(a_mod, x));
  CHECK_FALSE(in_fac(simple<Q>(k, 1), simple<Q>(k, 0)));
  // S_1 is the socle of P_2, not a quotient: Hom(P_2, S_1) = (S_1)_2 = 0.
  CHECK(hom_space(projective<Q>(k, 1), simple<Q>(k, 0)).empty());
  CHECK_FALSE(in_fac(projective<Q>(k, 1), simple<Q>(k, 0)));
  // the trace is a submodule
  auto i1 = injective<Q>(k, 0);
  auto t = trace(projective<Q>(k, 1), i1);
  auto sub = sub_representation(i1, t);
  sub.validate();
  CHECK(sub.dim == DimVector{1, 2});
}

TEST_CASE("quotients and kernels") {
  auto k = kronecker();
  auto p2 = projective<Q>(k, 1);
  auto maps = hom_space(projective<Q>(k, 0), p2);
  REQUIRE(maps.size() == 2);
  auto c = cokernel(maps[0], p2);
  c.validate();
  CHECK(c.dim == DimVector{1, 1});
  auto q = quotient(p2, image(maps[0]));
  CHECK(is_module_map(q.projection, p2, q.rep));
}

TEST_CASE("submodule dimension vectors") {
  auto k = kronecker();
  auto s1 = simple<GF2>(k, 0);
  CHECK(submodule_dim_vectors(s1) == std::set<DimVector>{{0, 0}, {1, 0}});
  auto r = kron_rep_f2(1, 0);
  CHECK(submodule_dim_vectors(r) == std::set<DimVector>{{0, 0}, {1, 0}, {1, 1}});
  auto a = a2();
  auto pp = direct_sum(projective<GF2>(a, 0), projective<GF2>(a, 0));
  auto sv = submodule_dim_vectors(pp);
  CHECK(sv.count({2, 0}));
  CHECK(sv.count({1, 0}));
  CHECK(sv.count({0, 0}));
  CHECK_THROWS_AS(submodule_dim_vectors(simple<Q>(k, 0)), NeedsFiniteField);

  auto cat = enumerate_reps<GF2>(k, {2, 2});
  for (const auto& m : cat.reps) {
    auto s = submodule_dim_vectors(m);
    CHECK(s == brute_submodules_f2(m));
    CHECK(s.count(DimVector(2, 0)));
    CHECK(s.count(m.dim));
  }
}

TEST_CASE("representation catalogs") {
  auto k = kronecker();
  auto c11 = enumerate_reps<GF2>(k, {1, 1});
  // 0, S_1, S_2, S_1+S_2 and three indecomposables of dimension (1,1)
  CHECK(c11.reps.size() == 7);
  CHECK(c11.indecomposables.size() == 5);
  auto ca = enumerate_reps<GF2>(a2(), {1, 1});
  CHECK(ca.reps.size() == 5);
  CHECK(enumerate_reps<GF2>(k, {0, 0}).reps.size() == 1);

  auto c22 = enumerate_reps<GF2>(k, {2, 2});
  for (int d1 = 0; d1 <= 2; ++d1)
    for (int d2 = 0; d2 <= 2; ++d2) {
      long long n = std::count_if(c22.reps.begin(), c22.reps.end(), [&](const auto& r) { return r.dim == DimVector{d1, d2}; });
      CHECK(n == brute_orbits_kronecker_f2(d1, d2));
    }
  for (const auto& r : c22.reps) r.validate();
}

TEST_CASE("Kronecker indecomposables over F_3 up to (4,4)") {
  auto k = kronecker();
  auto cat = enumerate_reps<GF3>(k, {4, 4});
  long long expected = 8;  // preprojective and preinjective
  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) expected += points_of_degree(3, d);
  CHECK(static_cast<long long>(cat.indecomposables.size()) == expected);
  // distinct classes have distinct Hom profiles against the indecomposables
  std::vector<std::vector<std::size_t>> profiles;
  for (const auto& x : cat.indecomposables) {
    std::vector<std::size_t> p;
    for (const auto& z : cat.indecomposables) p.push_back(hom_space(z, x).size());
    profiles.push_back(p);
  }
  std::sort(profiles.begin(), profiles.end());
  CHECK(std::adjacent_find(profiles.begin(), profiles.end()) == profiles.end());
}
