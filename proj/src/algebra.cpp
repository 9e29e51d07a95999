#include "siltlab/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace siltlab {

namespace {

constexpr std::size_t kMaxPaths = 200000;

template <class K>
MulTable<K> make_table(const std::vector<Path>& all,
                       const std::vector<std::vector<std::pair<int, Q>>>& ideal_gens,
                       const std::vector<int>& basis_any, const std::vector<int>& any_basis,
                       const std::map<std::vector<int>, int>& lookup) {
  MulTable<K> t;
  const int n_all = static_cast<int>(all.size());
  const int nb = static_cast<int>(basis_any.size());
  // Columns are reversed so that the leading entry of a reduced vector is its largest path.
  auto col = [&](int any) { return n_all - 1 - any; };
  Echelon<K> ideal(n_all);
  try {
    for (const auto& g : ideal_gens) {
      std::vector<std::pair<int, K>> raw;
      for (const auto& [any, c] : g) raw.emplace_back(col(any), from_rational<K>(c));
      ideal.insert(collect<K>(std::move(raw)));
    }
  } catch (const FieldMismatch&) {
    return t;
  }
  // The normal-form basis must agree with the rational one.
  for (int a = 0; a < n_all; ++a)
    if (ideal.is_pivot(col(a)) == (any_basis[a] >= 0)) return t;
  t.nf.resize(n_all);
  for (int a = 0; a < n_all; ++a) {
    if (any_basis[a] >= 0) {
      t.nf[a] = {{any_basis[a], K(1)}};
      continue;
    }
    SVec<K> r = ideal.reduce({{col(a), K(1)}});
    std::vector<std::pair<int, K>> raw;
    for (auto& [c, x] : r) raw.emplace_back(any_basis[n_all - 1 - c], x);
    t.nf[a] = collect<K>(std::move(raw));
  }
  t.prod.assign(nb, std::vector<SVec<K>>(nb));
  for (int i = 0; i < nb; ++i) {
    const Path& p = all[basis_any[i]];
    for (int j = 0; j < nb; ++j) {
      const Path& q = all[basis_any[j]];
      if (p.tgt != q.src) continue;
      if (p.arrows.empty()) {
        t.prod[i][j] = t.nf[basis_any[j]];
      } else if (q.arrows.empty()) {
        t.prod[i][j] = t.nf[basis_any[i]];
      } else {
        std::vector<int> cat = p.arrows;
        cat.insert(cat.end(), q.arrows.begin(), q.arrows.end());
        t.prod[i][j] = t.nf[lookup.at(cat)];
      }
    }
  }
  t.valid = true;
  return t;
}

}  // namespace

int Quiver::vertex_index(int vertex_id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == vertex_id) return static_cast<int>(i);
  throw InvalidInput("unknown vertex " + std::to_string(vertex_id));
}

int Quiver::arrow_index(const std::string& id) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].id == id) return static_cast<int>(i);
  throw InvalidInput("unknown arrow '" + id + "'");
}

std::string PathAlgebra::path_name(int b) const {
  const Path& p = basis_[b];
  if (p.arrows.empty()) return "e" + std::to_string(quiver_.vertices[p.src]);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += "*";
    s += quiver_.arrows[p.arrows[i]].id;
  }
  return s;
}

int PathAlgebra::find_any(const std::vector<int>& arrows) const {
  auto it = all_lookup_.find(arrows);
  return it == all_lookup_.end() ? -1 : it->second;
}

int PathAlgebra::find_path(const std::vector<std::string>& arrows) const {
  if (arrows.empty()) return -1;
  std::vector<int> idx;
  for (const auto& a : arrows) idx.push_back(quiver_.arrow_index(a));
  int any = find_any(idx);
  return any < 0 ? -1 : any_basis_[any];
}

AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<Relation>& relations) {
  auto alg = std::shared_ptr<PathAlgebra>(new PathAlgebra());
  PathAlgebra& A = *alg;
  A.quiver_ = quiver;
  A.relations_ = relations;
  const int l = static_cast<int>(quiver.vertices.size());
  if (l == 0) throw InvalidInput("quiver has no vertices");
  {
    std::set<int> ids(quiver.vertices.begin(), quiver.vertices.end());
    if (static_cast<int>(ids.size()) != l) throw InvalidInput("duplicate vertex id");
    std::set<std::string> aids;
    for (const auto& a : quiver.arrows)
      if (!aids.insert(a.id).second) throw InvalidInput("duplicate arrow id '" + a.id + "'");
  }
  for (const auto& a : quiver.arrows) {
    int s = quiver.vertex_index(a.src), t = quiver.vertex_index(a.tgt);
    if (s == t) throw CyclicQuiver("loop at vertex " + std::to_string(a.src));
    A.arrow_src_.push_back(s);
    A.arrow_tgt_.push_back(t);
  }
  const int na = static_cast<int>(quiver.arrows.size());

  // Kahn's algorithm; leftover vertices lie on a cycle.
  {
    std::vector<int> indeg(l, 0);
    for (int a = 0; a < na; ++a) ++indeg[A.arrow_tgt_[a]];
    std::vector<int> ready;
    for (int v = 0; v < l; ++v)
      if (!indeg[v]) ready.push_back(v);
    while (!ready.empty()) {
      std::sort(ready.begin(), ready.end(), std::greater<>());
      int v = ready.back();
      ready.pop_back();
      A.topo_.push_back(v);
      for (int a = 0; a < na; ++a)
        if (A.arrow_src_[a] == v && --indeg[A.arrow_tgt_[a]] == 0) ready.push_back(A.arrow_tgt_[a]);
    }
    if (static_cast<int>(A.topo_.size()) != l) throw CyclicQuiver("quiver has an oriented cycle");
  }

  // All paths, by length then lexicographically.
  for (int v = 0; v < l; ++v) A.all_.push_back(Path{v, v, {}});
  std::vector<Path> layer;
  for (int a = 0; a < na; ++a) layer.push_back(Path{A.arrow_src_[a], A.arrow_tgt_[a], {a}});
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
    std::vector<Path> next;
    for (const auto& p : layer) {
      A.all_lookup_[p.arrows] = static_cast<int>(A.all_.size());
      A.all_.push_back(p);
      if (A.all_.size() > kMaxPaths) throw InfiniteDimensional("path count exceeds cap");
      for (int a = 0; a < na; ++a) {
        if (A.arrow_src_[a] != p.tgt) continue;
        Path q = p;
        q.arrows.push_back(a);
        q.tgt = A.arrow_tgt_[a];
        next.push_back(std::move(q));
      }
    }
    layer = std::move(next);
  }
  const int n_all = static_cast<int>(A.all_.size());

  // Ideal generators: u r w for every relation r and paths u, w composable with it.
  std::vector<std::vector<std::pair<int, Q>>> gens;
  for (const auto& rel : relations) {
    if (rel.empty()) continue;
    std::vector<std::pair<std::vector<int>, Q>> terms;
    int s = -1, t = -1;
    for (const auto& term : rel) {
      if (term.path.size() < 2) throw InvalidInput("relation terms must have length >= 2");
      std::vector<int> idx;
      for (const auto& id : term.path) idx.push_back(quiver.arrow_index(id));
      int any = A.find_any(idx);
      if (any < 0) throw InvalidInput("relation term is not a path");
      const Path& p = A.all_[any];
      if (s < 0) {
        s = p.src;
        t = p.tgt;
      } else if (p.src != s || p.tgt != t) {
        throw InvalidInput("relation terms are not parallel");
      }
      terms.emplace_back(idx, term.coef);
    }
    for (int u = 0; u < n_all; ++u) {
      if (A.all_[u].tgt != s) continue;
      for (int w = 0; w < n_all; ++w) {
        if (A.all_[w].src != t) continue;
        std::vector<std::pair<int, Q>> g;
        for (const auto& [idx, c] : terms) {
          std::vector<int> cat = A.all_[u].arrows;
          cat.insert(cat.end(), idx.begin(), idx.end());
          cat.insert(cat.end(), A.all_[w].arrows.begin(), A.all_[w].arrows.end());
          g.emplace_back(A.find_any(cat), c);
        }
        gens.push_back(std::move(g));
      }
    }
  }

  // Basis over Q: paths that are not leading terms of the ideal.
  A.any_basis_.assign(n_all, -1);
  {
    Echelon<Q> ideal(n_all);
    for (const auto& g : gens) {
      std::vector<std::pair<int, Q>> raw;
      for (const auto& [any, c] : g) raw.emplace_back(n_all - 1 - any, c);
      ideal.insert(collect<Q>(std::move(raw)));
    }
    for (int a = 0; a < n_all; ++a) {
      if (ideal.is_pivot(n_all - 1 - a)) continue;
      A.any_basis_[a] = static_cast<int>(A.basis_.size());
      A.basis_any_.push_back(a);
      A.basis_.push_back(A.all_[a]);
    }
  }
  const int nb = static_cast<int>(A.basis_.size());
  A.between_.assign(l, std::vector<std::vector<int>>(l));
  A.position_.assign(nb, 0);
  for (int b = 0; b < nb; ++b) {
    auto& lst = A.between_[A.basis_[b].src][A.basis_[b].tgt];
    A.position_[b] = static_cast<int>(lst.size());
    lst.push_back(b);
  }
  for (int a = 0; a < na; ++a) A.arrow_basis_.push_back(A.any_basis_[A.all_lookup_.at({a})]);

  std::get<MulTable<Q>>(A.tables_) = make_table<Q>(A.all_, gens, A.basis_any_, A.any_basis_, A.all_lookup_);
  std::get<MulTable<GF2>>(A.tables_) = make_table<GF2>(A.all_, gens, A.basis_any_, A.any_basis_, A.all_lookup_);
  std::get<MulTable<GF3>>(A.tables_) = make_table<GF3>(A.all_, gens, A.basis_any_, A.any_basis_, A.all_lookup_);
  std::get<MulTable<GF5>>(A.tables_) = make_table<GF5>(A.all_, gens, A.basis_any_, A.any_basis_, A.all_lookup_);
  std::get<MulTable<GF7>>(A.tables_) = make_table<GF7>(A.all_, gens, A.basis_any_, A.any_basis_, A.all_lookup_);
  return alg;
}

AlgebraPtr opposite(const PathAlgebra& alg) {
  Quiver q;
  q.vertices = alg.quiver().vertices;
  for (const auto& a : alg.quiver().arrows) q.arrows.push_back(Arrow{a.id, a.tgt, a.src});
  std::vector<Relation> rels;
  for (const auto& r : alg.relations()) {
    Relation rr;
    for (const auto& t : r) rr.push_back(RelationTerm{std::vector<std::string>(t.path.rbegin(), t.path.rend()), t.coef});
    rels.push_back(std::move(rr));
  }
  return build_algebra(q, rels);
}

AlgebraPtr kronecker() {
  static const AlgebraPtr alg = [] {
    Quiver q;
    q.vertices = {1, 2};
    q.arrows = {{"a", 1, 2}, {"b", 1, 2}};
    return build_algebra(q);
  }();
  return alg;
}

AlgebraPtr a2() { return linear_an(2); }

AlgebraPtr linear_an(int n) {
  static std::mutex mu;
  static std::map<int, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    Quiver q;
    for (int v = 1; v <= n; ++v) q.vertices.push_back(v);
    for (int v = 1; v < n; ++v) q.arrows.push_back({"a" + std::to_string(v), v, v + 1});
    if (n == 2) q.arrows[0].id = "a";
    slot = build_algebra(q);
  }
  return slot;
}

}  // namespace siltlab
