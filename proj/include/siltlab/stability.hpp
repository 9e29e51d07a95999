#pragma once

// King stability on K_0(proj A) (basis [P_1],...,[P_l]): numerical torsion
// classes, semistability, walls D(M), cones C(T), the mutation fan and
// rational sequences approaching a stability vector from above.

#include <deque>
#include <functional>
#include <numeric>
#include <optional>

#include "siltlab/silting.hpp"

namespace siltlab {

using Theta = std::vector<Q>;

inline Theta theta_from(const std::vector<long long>& g) {
  Theta t;
  for (long long x : g) t.emplace_back(static_cast<long>(x));
  return t;
}

inline Q theta_eval(const Theta& th, const DimVector& d) {
  if (th.size() != d.size()) throw InvalidInput("theta and dimension vector lengths differ");
  Q s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += th[i] * d[i];
  return s;
}

template <class K>
Q theta_eval(const Theta& th, const Representation<K>& m) {
  return theta_eval(th, m.dim);
}

/// eta <= theta componentwise.
inline bool theta_leq(const Theta& eta, const Theta& th) {
  if (eta.size() != th.size()) throw InvalidInput("theta lengths differ");
  for (std::size_t i = 0; i < th.size(); ++i)
    if (eta[i] > th[i]) return false;
  return true;
}

inline std::vector<DimVector> quotient_dims(const DimVector& total, const std::set<DimVector>& subs) {
  std::vector<DimVector> out;
  for (const auto& s : subs) {
    DimVector q(total.size());
    for (std::size_t i = 0; i < total.size(); ++i) q[i] = total[i] - s[i];
    out.push_back(q);
  }
  return out;
}

template <class K>
std::vector<DimVector> quotient_dims(const Representation<K>& m, long long budget = 2000000) {
  return quotient_dims(m.dim, submodule_dim_vectors(m, budget));
}

namespace detail {

inline bool all_zero(const DimVector& d) {
  return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

}  // namespace detail

/// theta(q) >= 0 for every quotient q.
template <class K>
bool in_Tbar(const Theta& th, const Representation<K>& m, long long budget = 2000000) {
  for (const auto& q : quotient_dims(m, budget))
    if (theta_eval(th, q) < 0) return false;
  return true;
}

/// theta(q) > 0 for every nonzero quotient q.
template <class K>
bool in_T_strict(const Theta& th, const Representation<K>& m, long long budget = 2000000) {
  for (const auto& q : quotient_dims(m, budget))
    if (!detail::all_zero(q) && theta_eval(th, q) <= 0) return false;
  return true;
}

/// theta(s) <= 0 for every submodule s.
template <class K>
bool in_Fbar(const Theta& th, const Representation<K>& m, long long budget = 2000000) {
  for (const auto& s : submodule_dim_vectors(m, budget))
    if (theta_eval(th, s) > 0) return false;
  return true;
}

/// theta(s) < 0 for every nonzero submodule s.
template <class K>
bool in_F(const Theta& th, const Representation<K>& m, long long budget = 2000000) {
  for (const auto& s : submodule_dim_vectors(m, budget))
    if (!detail::all_zero(s) && theta_eval(th, s) >= 0) return false;
  return true;
}

template <class K>
bool is_semistable(const Theta& th, const Representation<K>& m, long long budget = 2000000) {
  return theta_eval(th, m) == 0 && in_Tbar(th, m, budget);
}

// ---- cones -------------------------------------------------------------------------

struct Halfspace {
  Theta normal;
  bool equality = false;  // normal . x == 0, otherwise normal . x >= 0
};

inline Q dot(const Theta& a, const Theta& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Scale to a primitive integer vector (zero stays zero).
inline Theta primitive(const Theta& v) {
  mpz_class l = 1, g = 0;
  for (const auto& x : v) l = lcm(l, mpz_class(x.get_den()));
  Theta out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * l;
    g = gcd(g, mpz_class(out[i].get_num()));
  }
  if (g != 0)
    for (auto& x : out) x /= g;
  return out;
}

struct Cone {
  int ambient = 0;
  std::vector<Theta> generators;
  std::vector<Halfspace> halfspaces;

  bool contains(const Theta& th) const {
    for (const auto& h : halfspaces) {
      Q v = dot(h.normal, th);
      if (h.equality ? v != 0 : v < 0) return false;
    }
    return true;
  }
  /// Relative interior: equalities hold, inequalities strict.
  bool interior(const Theta& th) const {
    for (const auto& h : halfspaces) {
      Q v = dot(h.normal, th);
      if (h.equality ? v != 0 : v <= 0) return false;
    }
    return true;
  }
  int dimension() const {
    Mat<Q> m(static_cast<int>(generators.size()), ambient);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < ambient; ++j) m(i, j) = generators[i][j];
    return rank(m);
  }
};

/// Average of the primitive generators, cleared to an integer vector.
inline Theta interior_point(const Cone& c) {
  Theta s(c.ambient, Q(0));
  for (const auto& g : c.generators) {
    auto p = primitive(g);
    for (int i = 0; i < c.ambient; ++i) s[i] += p[i];
  }
  return primitive(s);
}

namespace detail {

inline Mat<Q> rows_of(const std::vector<Theta>& rs, int l) {
  Mat<Q> m(static_cast<int>(rs.size()), l);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < l; ++j) m(i, j) = rs[i][j];
  return m;
}

inline std::vector<Theta> nullspace_of(const std::vector<Theta>& rs, int l) {
  auto k = kernel(rows_of(rs, l));
  std::vector<Theta> out;
  for (int j = 0; j < k.cols; ++j) {
    Theta v(l);
    for (int i = 0; i < l; ++i) v[i] = k(i, j);
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Generators (extreme rays plus +-lineality basis) of an H-represented cone,
/// by exact enumeration of rank-(l-1) subsystems of tight constraints.
inline std::vector<Theta> cone_generators(int l, const std::vector<Halfspace>& hs, long long budget = 1000000) {
  std::vector<Theta> eqs, ineqs;
  std::set<Theta> seen;
  for (const auto& h : hs) {
    auto p = primitive(h.normal);
    if (std::all_of(p.begin(), p.end(), [](const Q& x) { return x == 0; })) continue;
    if (h.equality) {
      eqs.push_back(p);
    } else if (seen.insert(p).second) {
      ineqs.push_back(p);
    }
  }
  std::vector<Theta> all = eqs;
  all.insert(all.end(), ineqs.begin(), ineqs.end());
  auto lineal = detail::nullspace_of(all, l);
  std::vector<Theta> base = eqs;
  base.insert(base.end(), lineal.begin(), lineal.end());
  const int rb = rank(detail::rows_of(base, l));
  const int need = l - 1 - rb;  // further tight inequalities fixing a ray

  std::vector<Theta> gens;
  std::set<Theta> found;
  auto feasible = [&](const Theta& r) {
    for (const auto& h : ineqs)
      if (dot(h, r) < 0) return false;
    return true;
  };
  auto try_ray = [&](const std::vector<Theta>& sys) {
    auto ns = detail::nullspace_of(sys, l);
    if (ns.size() != 1) return;
    for (int sgn : {1, -1}) {
      Theta r = ns[0];
      for (auto& x : r) x *= sgn;
      r = primitive(r);
      if (feasible(r) && found.insert(r).second) gens.push_back(r);
    }
  };
  if (need >= 0) {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(pick.size()) == need) {
        if (--budget < 0) throw BudgetExceeded("cone generator enumeration exceeds budget");
        std::vector<Theta> sys = base;
        for (int i : pick) sys.push_back(ineqs[i]);
        try_ray(sys);
        return;
      }
      for (int i = start; i < static_cast<int>(ineqs.size()); ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  for (const auto& v : lineal) {
    auto p = primitive(v);
    gens.push_back(p);
    for (auto& x : p) x = -x;
    gens.push_back(p);
  }
  return gens;
}

inline Cone cone_from_halfspaces(int l, std::vector<Halfspace> hs, long long budget = 1000000) {
  Cone c;
  c.ambient = l;
  c.generators = cone_generators(l, hs, budget);
  c.halfspaces = std::move(hs);
  return c;
}

inline Cone intersect(const Cone& a, const Cone& b, long long budget = 1000000) {
  auto hs = a.halfspaces;
  hs.insert(hs.end(), b.halfspaces.begin(), b.halfspaces.end());
  return cone_from_halfspaces(a.ambient, hs, budget);
}

/// Cone spanned by linearly independent generators, with its H-representation.
inline Cone cone_of_generators(int l, const std::vector<Theta>& gens) {
  Cone c;
  c.ambient = l;
  c.generators = gens;
  const int r = static_cast<int>(gens.size());
  Mat<Q> g(l, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < l; ++i) g(i, j) = gens[j][i];
  if (rank(g) != r) throw InvalidInput("cone generators are linearly dependent");
  auto inv = inverse(complete_basis(g));
  for (int i = 0; i < l; ++i) {
    Theta n(l);
    for (int j = 0; j < l; ++j) n[j] = (*inv)(i, j);
    c.halfspaces.push_back({n, i >= r});
  }
  return c;
}

template <class K>
Cone cone_of(const SiltingComplex<K>& t) {
  std::vector<Theta> gens;
  for (const auto& g : t.gvecs) gens.push_back(theta_from(g));
  return cone_of_generators(t.complex.alg->num_vertices(), gens);
}

/// D(M) = {theta : theta(M) = 0, theta(q) >= 0 for all quotients q}.
template <class K>
Cone wall(const Representation<K>& m, long long budget = 2000000) {
  if (m.total_dim() == 0) throw InvalidInput("wall of the zero module");
  const int l = m.alg->num_vertices();
  std::vector<Halfspace> hs;
  auto toq = [](const DimVector& d) {
    Theta t;
    for (int x : d) t.emplace_back(x);
    return t;
  };
  hs.push_back({toq(m.dim), true});
  for (const auto& q : quotient_dims(m, budget))
    if (!detail::all_zero(q) && q != m.dim) hs.push_back({toq(q), false});
  return cone_from_halfspaces(l, hs, budget);
}

// ---- the mutation fan -----------------------------------------------------------------

using GKey = std::vector<std::vector<long long>>;

template <class K>
struct ChamberRecord {
  SiltingComplex<K> t;
  Cone cone;
  std::map<int, GKey> neighbors;  // summand index -> key of the adjacent chamber
  GKey key() const { return t.gvecs; }
};

template <class K>
struct Fan {
  std::vector<ChamberRecord<K>> chambers;
  bool complete = false;
};

/// The mutation of t at summand j that stays two-term (exactly one direction does).
template <class K>
SiltingComplex<K> mutate_two_term(const SiltingComplex<K>& t, int j) {
  try {
    return mutate(t, j, Direction::left);
  } catch (const NotTwoTerm&) {
    return mutate(t, j, Direction::right);
  }
}

template <class K>
Fan<K> explore_fan(const AlgebraPtr& alg, int budget) {
  if (budget <= 0) throw InvalidInput("fan budget must be positive");
  Fan<K> fan;
  std::map<GKey, int> index;
  auto add = [&](SiltingComplex<K> t) {
    auto key = t.gvecs;
    index[key] = static_cast<int>(fan.chambers.size());
    auto c = cone_of(t);
    fan.chambers.push_back({std::move(t), std::move(c), {}});
  };
  add(make_silting(regular_stalk<K>(alg)));
  bool dropped = false;
  for (std::size_t head = 0; head < fan.chambers.size(); ++head) {
    for (int j = 0; j < fan.chambers[head].t.size(); ++j) {
      auto nb = mutate_two_term(fan.chambers[head].t, j);
      auto key = nb.gvecs;
      fan.chambers[head].neighbors[j] = key;
      if (index.count(key)) continue;
      if (static_cast<int>(fan.chambers.size()) >= budget) {
        dropped = true;
        continue;
      }
      add(std::move(nb));
    }
  }
  fan.complete = !dropped;
  return fan;
}

template <class K>
const ChamberRecord<K>* find_chamber(const Fan<K>& fan, const Theta& th) {
  for (const auto& c : fan.chambers)
    if (c.cone.interior(th)) return &c;
  return nullptr;
}

/// Breadth-first search over mutations from a start chamber for the chamber
/// with theta in its interior; nullopt when theta lies on a wall of a visited
/// chamber. Walking straight across walls is not enough: it can stall at a
/// ray where infinitely many chambers accumulate. Mutations are cached.
template <class K>
class ChamberWalker {
 public:
  explicit ChamberWalker(const AlgebraPtr& alg, int budget = 256) : alg_(alg), budget_(budget) {}

  std::optional<SiltingComplex<K>> locate(const Theta& th, std::optional<SiltingComplex<K>> start = std::nullopt) {
    std::deque<SiltingComplex<K>> queue;
    queue.push_back(start ? *start : make_silting(regular_stalk<K>(alg_)));
    std::set<GKey> seen{queue.front().gvecs};
    while (!queue.empty()) {
      auto cur = std::move(queue.front());
      queue.pop_front();
      auto c = cone_of(cur);
      if (c.interior(th)) return cur;
      if (c.contains(th)) return std::nullopt;
      for (int j = 0; j < cur.size(); ++j) {
        auto nb = step_to(cur, j);
        if (!seen.insert(nb.gvecs).second) continue;
        if (static_cast<int>(seen.size()) > budget_)
          throw SearchExhausted("no chamber containing theta within " + std::to_string(budget_) + " chambers");
        queue.push_back(std::move(nb));
      }
    }
    throw SearchExhausted("mutation graph exhausted without a chamber containing theta");
  }

  int mutations() const { return static_cast<int>(cache_.size()); }

 private:
  SiltingComplex<K> step_to(const SiltingComplex<K>& t, int j) {
    auto key = std::make_pair(t.gvecs, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto nb = mutate_two_term(t, j);
    cache_.emplace(key, nb);
    return nb;
  }

  AlgebraPtr alg_;
  int budget_;
  std::map<std::pair<GKey, int>, SiltingComplex<K>> cache_;
};

template <class K>
struct ApproachStep {
  Theta theta;          // theta^i
  SiltingComplex<K> t;  // chamber containing theta^i in its interior
  Q eps;                // eps * theta^i is a primitive integer vector
};

/// theta^i = theta + s_i [A] with s_i <= 1/(i+1) non-increasing, s_i the first
/// candidate (1/2, 2/3, 1/3, 3/4, 1/4, ... times 1/(i+1), then 1/(i+1)) placing
/// theta^i inside a chamber.
template <class K>
std::vector<ApproachStep<K>> approach_sequence(const AlgebraPtr& alg, const Theta& th, int k, int budget = 256,
                                               int max_denominator = 16) {
  const int l = alg->num_vertices();
  if (static_cast<int>(th.size()) != l) throw InvalidInput("theta has the wrong length");
  ChamberWalker<K> walker(alg, budget);
  std::vector<ApproachStep<K>> out;
  std::optional<Q> prev;
  for (int i = 0; i < k; ++i) {
    Q bound(1, i + 1);
    std::vector<Q> cands{Q(1, 2)};
    for (int m = 3; m <= max_denominator; ++m)
      for (int r = m - 1; r >= 1; --r)
        if (std::gcd(r, m) == 1) cands.emplace_back(r, m);
    cands.emplace_back(1);
    bool ok = false;
    for (const auto& c : cands) {
      Q s = c * bound;
      if (prev && s > *prev) continue;
      Theta ti = th;
      for (auto& x : ti) x += s;
      std::optional<SiltingComplex<K>> start;
      if (!out.empty()) start = out.back().t;
      auto t = walker.locate(ti, start);
      if (!t) continue;
      if (!out.empty() && !is_nested(t->complex, out.back().t.complex))
        throw NestednessViolation("consecutive chambers of the approach sequence are not nested");
      auto p = primitive(ti);
      Q eps = p[0] != 0 ? Q(p[0] / ti[0]) : Q(0);
      for (int v = 0; v < l && eps == 0; ++v)
        if (ti[v] != 0) eps = p[v] / ti[v];
      out.push_back({ti, std::move(*t), eps});
      prev = s;
      ok = true;
      break;
    }
    if (!ok) throw SearchExhausted("no chamber found near theta at step " + std::to_string(i));
  }
  return out;
}

}  // namespace siltlab
