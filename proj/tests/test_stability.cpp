#include "doctest.h"
#include "siltlab/stability.hpp"

using namespace siltlab;

namespace {

template <class K>
Representation<K> rep11(const AlgebraPtr& A, int a, int b) {
  Representation<K> m;
  m.alg = A;
  m.dim = {1, 1};
  m.mats = {Mat<K>(1, 1), Mat<K>(1, 1)};
  m.mats[0](0, 0) = K(a);
  m.mats[1](0, 0) = K(b);
  return m;
}

Theta th(std::initializer_list<long> xs) {
  Theta t;
  for (long x : xs) t.emplace_back(x);
  return t;
}

std::set<Theta> gens(const Cone& c) {
  std::set<Theta> s;
  for (const auto& g : c.generators) s.insert(primitive(g));
  return s;
}

}  // namespace

TEST_CASE("theta pairing and order") {
  auto A = kronecker();
  CHECK(theta_eval(th({-1, 1}), rep11<GF2>(A, 1, 1)) == 0);
  CHECK(theta_eval(th({0, 0}), projective<GF2>(A, 1)) == 0);
  CHECK(theta_leq(th({-1, 1}), th({1, 1})));
  CHECK_FALSE(theta_leq(th({1, 1}), th({-1, 1})));
}

TEST_CASE("numerical torsion classes over the Kronecker algebra") {
  auto A = kronecker();
  auto s1 = simple<GF2>(A, 0), s2 = simple<GF2>(A, 1);
  auto reg = rep11<GF2>(A, 1, 1);
  auto i1 = injective<GF2>(A, 0);
  CHECK(in_Tbar(th({1, 1}), i1));
  CHECK_FALSE(in_Tbar(th({-1, 1}), s1));
  CHECK(in_Tbar(th({-1, 1}), i1));
  CHECK(is_semistable(th({0, 0}), s1));
  CHECK(is_semistable(th({-1, 1}), reg));
  CHECK_FALSE(is_semistable(th({-1, 1}), s2));
  CHECK(in_T_strict(th({-1, 1}), s2));
  CHECK_FALSE(in_T_strict(th({-1, 1}), reg));
  CHECK(in_F(th({-1, 1}), s1));
  CHECK(in_Fbar(th({-1, 1}), reg));
  CHECK_FALSE(in_F(th({-1, 1}), reg));

  // scaling invariance and monotonicity on every class up to (2,2)
  auto cat = enumerate_reps<GF2>(A, {2, 2});
  std::vector<Theta> thetas{th({-1, 1}), th({2, -1}), th({-3, 5}), th({1, 0}), th({0, -1})};
  for (const auto& m : cat.reps)
    for (const auto& t : thetas) {
      Theta s = t;
      for (auto& x : s) x *= Q(7, 3);
      CHECK(in_Tbar(t, m) == in_Tbar(s, m));
      for (const auto& u : thetas)
        if (theta_leq(t, u) && in_Tbar(t, m)) CHECK(in_Tbar(u, m));
    }
}

TEST_CASE("walls") {
  auto A = kronecker();
  auto w2 = wall(simple<GF2>(A, 1));
  CHECK(w2.dimension() == 1);
  CHECK(gens(w2) == std::set<Theta>{th({1, 0}), th({-1, 0})});
  auto wr = wall(rep11<GF2>(A, 1, 0));
  CHECK(gens(wr) == std::set<Theta>{th({-1, 1})});
  CHECK(wr.contains(th({-3, 3})));
  CHECK_FALSE(wr.contains(th({3, -3})));
  auto ws = wall(direct_sum(simple<GF2>(A, 0), simple<GF2>(A, 1)));
  CHECK(ws.generators.empty());
  CHECK(ws.dimension() == 0);

  // an A_3 wall needs the general generator enumeration
  auto A3 = linear_an(3);
  auto p1 = projective<GF2>(A3, 0);
  auto w = wall(p1);
  for (const auto& g : w.generators) CHECK(w.contains(g));
  CHECK(w.dimension() <= 2);
}

TEST_CASE("cones of silting objects") {
  auto A = kronecker();
  auto ta = make_silting(regular_stalk<Q>(A));
  auto ca = cone_of(ta);
  CHECK(ca.interior(th({1, 1})));
  CHECK(ca.contains(th({0, 5})));
  CHECK_FALSE(ca.contains(th({-1, 5})));
  CHECK(interior_point(ca) == th({1, 1}));
  auto t1 = mutate(ta, 1, Direction::left);
  auto c1 = cone_of(t1);
  CHECK(gens(c1) == std::set<Theta>{th({0, 1}), th({-1, 2})});
  auto meet = intersect(ca, c1);
  CHECK(gens(meet) == std::set<Theta>{th({0, 1})});
}

TEST_CASE("fan exploration") {
  auto f = explore_fan<Q>(a2(), 10);
  CHECK(f.chambers.size() == 5);
  CHECK(f.complete);
  for (const auto& c : f.chambers) CHECK(c.neighbors.size() == 2);

  auto k = explore_fan<Q>(kronecker(), 6);
  CHECK(k.chambers.size() == 6);
  CHECK_FALSE(k.complete);
  CHECK(k.chambers[0].cone.interior(th({1, 1})));

  auto one = explore_fan<Q>(kronecker(), 1);
  CHECK(one.chambers.size() == 1);
  CHECK_FALSE(one.complete);
}

TEST_CASE("chambers agree with aisles and carry no semistables") {
  for (auto [alg, n] : {std::pair{a2(), 10}, std::pair{kronecker(), 7}}) {
    auto f = explore_fan<Q>(alg, n);
    auto cat = enumerate_reps<GF2>(alg, {2, 2});
    for (const auto& c : f.chambers) {
      auto p = interior_point(c.cone);
      auto h0 = H0(convert<GF2>(c.t.complex));
      for (const auto& m : cat.reps) {
        CHECK(in_Tbar(p, m) == in_fac(h0, m));
        if (!m.is_zero()) CHECK_FALSE(is_semistable(p, m));
      }
    }
  }
}

TEST_CASE("approach sequences") {
  auto A = kronecker();
  auto seq = approach_sequence<Q>(A, th({-1, 1}), 5);
  REQUIRE(seq.size() == 5);
  for (int i = 0; i < 5; ++i) {
    long long n = i + 1;
    CHECK(seq[i].t.g() == std::vector<long long>{-(2 * n - 1), 2 * n + 1});
    Theta g = theta_from(seq[i].t.g());
    Theta scaled = seq[i].theta;
    for (auto& x : scaled) x *= seq[i].eps;
    CHECK(scaled == g);
    CHECK(theta_leq(th({-1, 1}), seq[i].theta));
    if (i > 0) CHECK(theta_leq(seq[i].theta, seq[i - 1].theta));
    Q dist = 0;
    for (int v = 0; v < 2; ++v) dist = std::max(dist, Q(abs(seq[i].theta[v] - th({-1, 1})[v])));
    CHECK(dist <= Q(1, i + 1));
  }

  auto bp = approach_sequence<Q>(A, th({0, 1}), 4);
  for (const auto& s : bp) CHECK(s.t.gvecs == std::vector<std::vector<long long>>{{0, 1}, {1, 0}});

  auto in = approach_sequence<Q>(A, th({-1, 3}), 3);
  for (const auto& s : in) CHECK(s.t.g() == std::vector<long long>{-1, 3});
}
