#include <set>

#include "doctest.h"
#include "siltlab/complex.hpp"

using namespace siltlab;

namespace {

// All path matrices between two vertex lists over F_2.
std::vector<PathMatrix<GF2>> all_matrices(const PathAlgebra& A, const std::vector<int>& r, const std::vector<int>& c) {
  std::vector<std::tuple<int, int, int>> slots;
  for (int i = 0; i < (int)r.size(); ++i)
    for (int j = 0; j < (int)c.size(); ++j)
      for (int p : A.paths_between(r[i], c[j])) slots.emplace_back(i, j, p);
  REQUIRE(slots.size() <= 16);
  std::vector<PathMatrix<GF2>> out;
  for (long long mask = 0; mask < (1LL << slots.size()); ++mask) {
    PathMatrix<GF2> m(r, c);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) m.add(std::get<0>(slots[s]), std::get<1>(slots[s]), std::get<2>(slots[s]), GF2(1));
    out.push_back(m);
  }
  return out;
}

std::string key(const std::map<int, PathMatrix<GF2>>& f) {
  std::string s;
  for (const auto& [k, m] : f) {
    s += "|" + std::to_string(k) + ":";
    for (int r = 0; r < m.nrows(); ++r)
      for (const auto& e : m.e[r]) s += std::to_string(r) + "," + std::to_string(e.col) + "," + std::to_string(e.path) + ";";
  }
  return s;
}

// log_2 |chain maps| - log_2 |null-homotopic maps|, by exhaustive enumeration.
int brute_hom_dim_f2(const Complex<GF2>& x, const Complex<GF2>& y) {
  const auto& A = *x.alg;
  int lo = std::min(x.lo, y.lo) - 1, hi = std::max(x.hi(), y.hi()) + 1;
  std::vector<int> degs;
  for (int k = lo; k <= hi; ++k)
    if (!x.term(k).empty() && !y.term(k).empty()) degs.push_back(k);
  std::vector<std::vector<PathMatrix<GF2>>> choices;
  for (int k : degs) choices.push_back(all_matrices(A, x.term(k), y.term(k)));
  long long cycles = 0;
  std::vector<std::size_t> idx(degs.size(), 0);
  while (true) {
    std::map<int, PathMatrix<GF2>> f;
    for (std::size_t i = 0; i < degs.size(); ++i) f[degs[i]] = choices[i][idx[i]];
    auto at = [&](int k) { return f.count(k) ? f[k] : PathMatrix<GF2>(x.term(k), y.term(k)); };
    bool ok = true;
    for (int k = lo; k < hi && ok; ++k)
      ok = add(mul(x.diff(k), at(k + 1), A), mul(at(k), y.diff(k), A), GF2(1)).is_zero_matrix();
    cycles += ok;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  // homotopies
  std::vector<int> hdeg;
  std::vector<std::vector<PathMatrix<GF2>>> hch;
  for (int k = lo; k <= hi; ++k)
    if (!x.term(k).empty() && !y.term(k - 1).empty()) {
      hdeg.push_back(k);
      hch.push_back(all_matrices(A, x.term(k), y.term(k - 1)));
    }
  std::set<std::string> nulls;
  std::vector<std::size_t> hidx(hdeg.size(), 0);
  while (true) {
    auto h = [&](int k) {
      for (std::size_t i = 0; i < hdeg.size(); ++i)
        if (hdeg[i] == k) return hch[i][hidx[i]];
      return PathMatrix<GF2>(x.term(k), y.term(k - 1));
    };
    std::map<int, PathMatrix<GF2>> f;
    for (int k = lo; k <= hi; ++k) {
      auto m = add(mul(x.diff(k), h(k + 1), A), mul(h(k), y.diff(k - 1), A));
      if (!m.is_zero_matrix()) f[k] = m;
    }
    nulls.insert(key(f));
    std::size_t i = 0;
    while (i < hidx.size() && ++hidx[i] == hch[i].size()) hidx[i++] = 0;
    if (i == hidx.size()) break;
  }
  long long b = (long long)nulls.size();
  REQUIRE(cycles % b == 0);
  long long q = cycles / b;
  int d = 0;
  while ((1LL << d) < q) ++d;
  REQUIRE((1LL << d) == q);
  return d;
}

template <class K>
PathMatrix<K> row(const PathAlgebra& A, int src, const std::vector<int>& cols, const std::vector<std::vector<std::string>>& paths) {
  PathMatrix<K> m({src}, cols);
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (!paths[c].empty()) m.add(0, (int)c, A.find_path(paths[c]), K(1));
  return m;
}

}  // namespace

TEST_CASE("g-vectors, H0 and basic shapes over the Kronecker algebra") {
  auto A = kronecker();
  // P_1 -> P_2 + P_2 via (a, b)
  auto d = row<Q>(*A, 0, {1, 1}, {{"a"}, {"b"}});
  auto x = two_term<Q>(A, {0}, {1, 1}, d);
  validate(x);
  CHECK(g_vector(x) == std::vector<long long>{-1, 2});
  auto h = H0(x);
  CHECK(h.dim == DimVector{3, 2});
  CHECK(cohomology(x, -1).is_zero());
  // P_1 -> P_2 via a: cokernel has dimension (1, 1)
  auto y = two_term<Q>(A, {0}, {1}, row<Q>(*A, 0, {1}, {{"a"}}));
  CHECK(H0(y).dim == DimVector{1, 1});
  CHECK(g_vector(shift(y, 1)) == std::vector<long long>{1, -1});
  // stalk P_2[1]: H^{-1}(nu P_2[1]) = I_2
  auto z = stalk<Q>(A, {1}, -1);
  auto n = Hminus1_nu(z);
  CHECK(n.dim == DimVector{0, 1});
  // nu applied to P_1 -> P_2 via a: kernel of I_1 -> I_2
  CHECK(Hminus1_nu(y).dim == DimVector{1, 1});
}

TEST_CASE("Hom in the homotopy category agrees with exhaustive enumeration over F_2") {
  auto A = kronecker();
  const auto& a = *A;
  auto pa = row<GF2>(a, 0, {1}, {{"a"}});
  auto pb = row<GF2>(a, 0, {1}, {{"b"}});
  auto pab = row<GF2>(a, 0, {1, 1}, {{"a"}, {"b"}});
  std::vector<Complex<GF2>> xs = {
      stalk<GF2>(A, {0}),           stalk<GF2>(A, {1}),          stalk<GF2>(A, {0}, -1),
      stalk<GF2>(A, {1}, -1),       two_term<GF2>(A, {0}, {1}, pa), two_term<GF2>(A, {0}, {1}, pb),
      two_term<GF2>(A, {0}, {1, 1}, pab), disk<GF2>(A, {1}, -1),
  };
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      for (int n : {0, 1}) {
        CAPTURE(i);
        CAPTURE(j);
        CAPTURE(n);
        auto y = shift(xs[j], n);
        CHECK(hom_k(share(xs[i]), share(y)).dim() == brute_hom_dim_f2(xs[i], y));
      }
}

TEST_CASE("Hom between stalk complexes is Hom between projectives") {
  auto A = linear_an(3);
  for (int u = 0; u < 3; ++u)
    for (int w = 0; w < 3; ++w) {
      auto h = hom_k(share(stalk<Q>(A, {u})), share(stalk<Q>(A, {w})));
      CHECK(h.dim() == (int)hom_space(projective<Q>(A, u), projective<Q>(A, w)).size());
    }
}

TEST_CASE("coordinates modulo homotopy") {
  auto A = kronecker();
  auto x = share(two_term<Q>(A, {0}, {1}, row<Q>(*A, 0, {1}, {{"a"}})));
  auto h = hom_k(x, x);
  REQUIRE(h.dim() == 1);
  auto id = identity_map(x);
  auto c = h.coords(id);
  REQUIRE(c.size() == 1);
  CHECK(c[0] != 0);
  auto dk = share(disk<Q>(A, {1}, -1));
  auto hd = hom_k(dk, dk);
  CHECK(hd.dim() == 0);
  CHECK(hd.is_null_homotopic(identity_map(dk)));
  // multiples
  auto f = scaled(id, Q(3));
  CHECK(h.coords(f)[0] == 3 * c[0]);
}

TEST_CASE("cones, shifts and minimal forms") {
  auto A = kronecker();
  auto x = share(two_term<Q>(A, {0}, {1, 1}, row<Q>(*A, 0, {1, 1}, {{"a"}, {"b"}})));
  auto c = cone(identity_map(x));
  validate(c);
  CHECK(minimal_form(c).is_zero());
  CHECK(hom_k(share(c), share(c)).dim() == 0);
  // adding a contractible summand leaves the minimal form unchanged
  auto s = direct_sum(*x, disk<Q>(A, {0}, -1));
  auto m = minimal_form(s);
  CHECK(is_minimal(m));
  CHECK(m.term(-1) == x->term(-1));
  CHECK(m.term(0) == x->term(0));
  CHECK(g_vector(m) == g_vector(*x));
  // P_1 -> P_1 + P_2 via (e1, a) reduces to the stalk P_2
  PathMatrix<Q> d({0}, {0, 1});
  d.add(0, 0, A->trivial(0), Q(1));
  d.add(0, 1, A->find_path({"a"}), Q(1));
  auto t = minimal_form(two_term<Q>(A, {0}, {0, 1}, d));
  CHECK(t.term(-1).empty());
  CHECK(t.term(0) == std::vector<int>{1});
  // shift twice is the identity on differentials
  auto sh = shift(shift(*x, 1), -1);
  CHECK(sh.lo == x->lo);
  CHECK(sh.d[0] == x->d[0]);
  // cone(f) for f : P_1 -> P_2 (stalks) is the two-term complex of f
  auto p1 = share(stalk<Q>(A, {0}));
  auto p2 = share(stalk<Q>(A, {1}));
  ChainMap<Q> f{p1, p2, {}};
  f.set(0, row<Q>(*A, 0, {1}, {{"a"}}));
  CHECK(is_chain_map(f));
  auto cf = cone(f);
  CHECK(cf.lo == -1);
  CHECK(H0(cf).dim == DimVector{1, 1});
}

TEST_CASE("Hom into modules") {
  auto A = kronecker();
  auto x = two_term<Q>(A, {0}, {1}, row<Q>(*A, 0, {1}, {{"a"}}));
  auto m = H0(x);
  // Hom_K(X, M) = Hom_A(H0 X, M) for M = H0 X
  CHECK(hom_to_module(x, m, 0).dim == (int)hom_space(m, m).size());
  // Hom_K(P_v, M) = M_v
  for (int v = 0; v < 2; ++v) {
    auto s = stalk<Q>(A, {v});
    auto i1 = injective<Q>(A, 0);
    CHECK(hom_to_module(s, i1, 0).dim == i1.dim[v]);
    CHECK(hom_to_module(s, i1, 1).dim == 0);
  }
  // Euler form: dim Hom(X, M) - dim Hom(X, M[1]) = <g(X), dim M>
  for (int v = 0; v < 2; ++v) {
    auto sv = simple<Q>(A, v);
    int lhs = hom_to_module(x, sv, 0).dim - hom_to_module(x, sv, 1).dim;
    CHECK(Q(lhs) == euler_pair(g_vector(x), sv.dim));
  }
}

TEST_CASE("dualize twice is the identity") {
  auto A = kronecker();
  auto op = opposite(*A);
  auto x = two_term<Q>(A, {0}, {1, 1}, row<Q>(*A, 0, {1, 1}, {{"a"}, {"b"}}));
  auto y = dualize(x, op);
  validate(y);
  CHECK(y.lo == 0);
  CHECK(y.hi() == 1);
  CHECK(injective_class(y) == std::vector<long long>{1, -2});
  auto back = dualize(y, A);
  CHECK(back.lo == x.lo);
  CHECK(back.terms == x.terms);
  CHECK(back.d[0] == x.d[0]);
}

TEST_CASE("reduction to a prime field") {
  auto A = kronecker();
  auto x = two_term<Q>(A, {0}, {1}, row<Q>(*A, 0, {1}, {{"a"}}));
  auto y = convert<GF3>(x);
  CHECK(H0(y).dim == DimVector{1, 1});
  CHECK(hom_k(share(y), share(y)).dim() == 1);
}
