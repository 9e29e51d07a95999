// Acceptance run: one PASS/FAIL line per criterion, with wall-clock times.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "siltlab/nested_colimit.hpp"

using namespace siltlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool in_time = limit_s <= 0 || secs < limit_s;
  bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  " << id << ". " << name << "  (" << std::fixed;
  line.precision(2);
  line << secs << " s";
  if (limit_s > 0) line << " / limit " << limit_s << " s";
  line << ")";
  if (!o.detail.empty()) line << "  " << o.detail;
  if (!in_time) line << "  [over time limit]";
  std::cout << line.str() << std::endl;
}

std::string gstr(const std::vector<long long>& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + ")";
}

template <class K>
Complex<K> random_two_term(const AlgebraPtr& alg, std::mt19937& rng) {
  const int l = alg->num_vertices();
  std::uniform_int_distribution<int> cnt(0, 2), vtx(0, l - 1), coef(-2, 2);
  std::vector<int> neg, zero;
  for (int i = cnt(rng); i > 0; --i) neg.push_back(vtx(rng));
  for (int i = cnt(rng) + 1; i > 0; --i) zero.push_back(vtx(rng));
  PathMatrix<K> d(neg, zero);
  for (int r = 0; r < static_cast<int>(neg.size()); ++r)
    for (int c = 0; c < static_cast<int>(zero.size()); ++c)
      for (int p : alg->paths_between(neg[r], zero[c])) d.add(r, c, p, K(static_cast<long>(coef(rng))));
  return two_term<K>(alg, neg, zero, d);
}

template <class K>
Representation<K> random_module(const AlgebraPtr& alg, std::mt19937& rng) {
  std::uniform_int_distribution<int> dd(0, 2), coef(-2, 2);
  Representation<K> m;
  m.alg = alg;
  for (int v = 0; v < alg->num_vertices(); ++v) m.dim.push_back(dd(rng));
  for (int a = 0; a < alg->num_arrows(); ++a) {
    Mat<K> x(m.dim[alg->arrow_src(a)], m.dim[alg->arrow_tgt(a)]);
    for (auto& e : x.a) e = K(static_cast<long>(coef(rng)));
    m.mats.push_back(x);
  }
  m.validate();
  return m;
}

std::vector<std::pair<std::string, AlgebraPtr>> fixtures() {
  return {{"Kronecker", kronecker()}, {"A_2", a2()}, {"A_3", linear_an(3)}, {"Kronecker^op", opposite(*kronecker())}};
}

bool is_first_quadrant(const Cone& c, int l) {
  if (static_cast<int>(c.halfspaces.size()) != l) return false;
  std::set<Theta> normals, units;
  for (const auto& h : c.halfspaces) {
    if (h.equality) return false;
    normals.insert(primitive(h.normal));
  }
  for (int i = 0; i < l; ++i) {
    Theta e(l, Q(0));
    e[i] = 1;
    units.insert(e);
  }
  return normals == units;
}

}  // namespace

int main() {
  std::cout << "g-vectors in the basis ([P_1],...,[P_l]); the Kronecker example's {[P_2],[P_1]} coordinates are reversed"
            << std::endl;

  run(1, "Kronecker sequence T_0..T_10 by left mutation", 10, [] {
    auto c = kronecker_chain(10);
    for (int i = 0; i <= 10; ++i) {
      long long n = i;
      if (c.t[i].g() != std::vector<long long>{-(2 * n - 1), 2 * n + 1})
        return Outcome{false, "T_" + std::to_string(i) + " has g = " + gstr(c.t[i].g())};
    }
    return Outcome{true, "g(T_10) = " + gstr(c.t[10].g())};
  });

  std::optional<DirectedSystem<Q>> sys;
  run(2, "diagram certificates for the Kronecker chain k = 5", 60, [&] {
    sys = build_system(kronecker_chain(5));
    int size = 0;
    for (std::size_t i = 0; i < sys->stages.size(); ++i) {
      const auto& c = sys->stages[i].cert;
      if (!c.all()) return Outcome{false, "stage " + std::to_string(i) + " certificate failed"};
    }
    for (std::size_t i = 0; i < sys->add_equivalent.size(); ++i)
      if (!sys->add_equivalent[i]) return Outcome{false, "add(T'_" + std::to_string(i) + ") != add(T_" + std::to_string(i) + ")"};
    size = sys->objects.back()->size();
    return Outcome{true, "5 stages, |T'_5| = " + std::to_string(size) + " projectives"};
  });

  run(3, "Mittag-Leffler surjectivity, indecomposables of Fac H0(T_5) up to total dimension 8 over F_2", 120, [&] {
    if (!sys) sys = build_system(kronecker_chain(5));
    auto cat = enumerate_reps<GF2>(kronecker(), {4, 4});
    auto h0 = H0(convert<GF2>(sys->chain.t.back().complex));
    std::vector<Representation<GF2>> tests;
    for (const auto& m : cat.indecomposables)
      if (m.total_dim() <= 8 && in_fac(h0, m)) tests.push_back(m);
    auto r = mittag_leffler_check(*sys, tests);
    if (!r.invalid.empty()) return Outcome{false, "test modules outside the aisle"};
    if (!r.passed()) return Outcome{false, "a stage map is not surjective"};
    return Outcome{true, std::to_string(tests.size()) + " modules x " + std::to_string(sys->maps.size()) + " stages"};
  });

  run(4, "limit torsion class for theta = [P_2] - [P_1], dim <= (4,4) over F_2 and F_3", 600, [] {
    auto chain = kronecker_chain(8);
    Theta th{Q(-1), Q(1)};
    std::string detail;
    auto one = [&](auto tag) -> bool {
      using K = decltype(tag);
      auto cat = enumerate_reps<K>(kronecker(), {4, 4});
      auto r = limit_torsion_class(chain, th, cat.reps);
      bool ok = r.chain_consistent && r.sandwich && r.residual.empty();
      for (std::size_t m = 0; m < cat.reps.size(); ++m) {
        bool expect = true;
        for (int s : cat.summands[m])
          expect = expect && cat.indecomposables[s].dim[0] <= cat.indecomposables[s].dim[1];
        ok = ok && bool(r.in_limit[m]) == expect && bool(r.in_target[m]) == expect;
      }
      detail += "F_" + std::to_string(ScalarTraits<K>::characteristic) + ": " + std::to_string(r.modules) +
                " modules, |B| = " + std::to_string(r.target_size) + ", stable from k = " +
                std::to_string(r.stabilized_at) + "; ";
      return ok;
    };
    bool ok = one(GF2{}) && one(GF3{});
    return Outcome{ok, detail};
  });

  run(5, "Bongartz completion and the Remark sequence (k = 6) for indecomposable presilting U", 60, [] {
    int count = 0;
    for (auto [name, alg, budget] : {std::tuple{"A_2", a2(), 10}, std::tuple{"Kronecker", kronecker(), 9}}) {
      auto fan = explore_fan<Q>(alg, budget);
      std::vector<Complex<Q>> us;
      std::set<std::vector<long long>> seen;
      for (const auto& c : fan.chambers)
        for (int j = 0; j < c.t.size(); ++j)
          if (seen.insert(c.t.gvecs[j]).second) us.push_back(c.t.summands[j]);
      for (const auto& u : us) {
        auto b = bongartz_complement(u);
        if (!is_silting(direct_sum(u, b.raw)))
          return Outcome{false, std::string(name) + ": U + U' not silting for U with g = " + gstr(g_vector(u))};
        auto r = bongartz_limit_check<GF2>(u, 6, {1, 1});
        for (bool x : r.in_bongartz)
          if (!x) return Outcome{false, std::string(name) + ": theta^i left the Bongartz chamber, g(U) = " + gstr(g_vector(u))};
        if (!r.sequence_gvectors || !r.torsion.sandwich)
          return Outcome{false, std::string(name) + ": Remark sequence inconsistent, g(U) = " + gstr(g_vector(u))};
        ++count;
      }
    }
    return Outcome{true, std::to_string(count) + " presilting U"};
  });

  run(6, "fan counts: A_2 closes with 5 chambers; C(A) is the first quadrant", 0, [] {
    auto f = explore_fan<Q>(a2(), 64);
    if (!f.complete || f.chambers.size() != 5)
      return Outcome{false, "A_2 fan has " + std::to_string(f.chambers.size()) + " chambers"};
    for (const auto& [name, alg] : fixtures()) {
      auto c = cone_of(make_silting(regular_stalk<Q>(alg)));
      if (!is_first_quadrant(c, alg->num_vertices())) return Outcome{false, name + ": C(A) is not the orthant"};
    }
    return Outcome{true, "5 chambers, complete"};
  });

  run(7, "Euler form equals the alternating Hom sum on random pairs", 0, [] {
    std::mt19937 rng(20240917);
    int pairs = 0;
    for (const auto& [name, alg] : fixtures()) {
      for (int i = 0; i < 100; ++i, ++pairs) {
        auto x = random_two_term<Q>(alg, rng);
        auto m = random_module<Q>(alg, rng);
        int alt = hom_to_module(x, m, 0).dim - hom_to_module(x, m, 1).dim + hom_to_module(x, m, -1).dim;
        if (Q(alt) != euler_pair(g_vector(x), m.dim)) return Outcome{false, name + ": mismatch on pair " + std::to_string(i)};
      }
    }
    return Outcome{true, std::to_string(pairs) + " pairs over 4 algebras"};
  });

  run(8, "stability properties: scaling, monotonicity, the limiting wall", 60, [] {
    auto alg = kronecker();
    auto cat = enumerate_reps<GF2>(alg, {3, 3});
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-4, 4), e(1, 9);
    std::vector<Theta> ths;
    for (int i = 0; i < 12; ++i) ths.push_back({Q(c(rng)), Q(c(rng))});
    int checks = 0;
    for (const auto& m : cat.reps)
      for (const auto& t : ths) {
        bool base = in_Tbar(t, m);
        Theta s = t;
        Q eps(e(rng), e(rng));
        for (auto& x : s) x *= eps;
        if (in_Tbar(s, m) != base) return Outcome{false, "scaling changed membership"};
        for (const auto& u : ths)
          if (theta_leq(t, u) && base && !in_Tbar(u, m)) return Outcome{false, "monotonicity violated"};
        ++checks;
      }
    Representation<GF2> reg;
    reg.alg = alg;
    reg.dim = {1, 1};
    reg.mats = {Mat<GF2>::identity(1), Mat<GF2>(1, 1)};
    auto w = wall(reg);
    std::set<Theta> gens;
    for (const auto& g : w.generators) gens.insert(primitive(g));
    if (gens != std::set<Theta>{Theta{Q(-1), Q(1)}}) return Outcome{false, "wall of the regular (1,1) is not the ray"};
    return Outcome{true, std::to_string(checks) + " (module, theta) checks; D(R) = R_{>=0}(-1,1)"};
  });

  run(9, "dualize reverses Hom dimensions on random pairs over Kronecker^op", 0, [] {
    auto op = opposite(*kronecker());
    auto alg = kronecker();
    std::mt19937 rng(99);
    for (int i = 0; i < 60; ++i) {
      auto x = random_two_term<Q>(op, rng);
      auto y = random_two_term<Q>(op, rng);
      auto dx = dualize(x, alg), dy = dualize(y, alg);
      for (int n = -1; n <= 1; ++n)
        if (hom_dim(x, y, n) != hom_dim(dy, dx, n)) return Outcome{false, "pair " + std::to_string(i)};
    }
    return Outcome{true, "60 pairs, shifts -1..1"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
