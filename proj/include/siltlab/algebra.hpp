#pragma once

// Finite acyclic quivers and their path algebras (optionally modulo
// relations given as combinations of parallel paths of length >= 2).
//
// Conventions. A path p = a1 a2 ... an runs from s(a1) to t(an); paths are
// concatenated left to right. The trivial path at vertex v has basis index v.
// Basis paths are ordered: trivial paths, then by length, then
// lexicographically by arrow index.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "siltlab/field.hpp"
#include "siltlab/linalg.hpp"

namespace siltlab {

struct Arrow {
  std::string id;
  int src = 0;  // vertex id
  int tgt = 0;
};

struct Quiver {
  std::vector<int> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(int vertex_id) const;
  int arrow_index(const std::string& id) const;
};

/// A term of a relation: coefficient times a path given by arrow ids.
struct RelationTerm {
  std::vector<std::string> path;
  Q coef;
};
using Relation = std::vector<RelationTerm>;

struct Path {
  int src = 0;  // vertex index
  int tgt = 0;
  std::vector<int> arrows;  // arrow indices
  int length() const { return static_cast<int>(arrows.size()); }
};

/// Multiplication data of the basis over one scalar type.
template <class K>
struct MulTable {
  bool valid = false;
  // prod[i][j] = normal form of (basis i)(basis j) over basis indices.
  std::vector<std::vector<SVec<K>>> prod;
  // normal form of every path of the quiver (indexed like all_paths()).
  std::vector<SVec<K>> nf;
};

class PathAlgebra;
using AlgebraPtr = std::shared_ptr<const PathAlgebra>;

class PathAlgebra {
 public:
  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation>& relations() const { return relations_; }

  int num_vertices() const { return static_cast<int>(quiver_.vertices.size()); }
  int num_arrows() const { return static_cast<int>(quiver_.arrows.size()); }
  int arrow_src(int a) const { return arrow_src_[a]; }
  int arrow_tgt(int a) const { return arrow_tgt_[a]; }

  int dim() const { return static_cast<int>(basis_.size()); }
  const Path& basis_path(int b) const { return basis_[b]; }
  const std::vector<Path>& basis() const { return basis_; }
  int trivial(int v) const { return v; }
  bool is_trivial(int b) const { return b < num_vertices(); }

  /// Basis paths from vertex index u to vertex index w.
  const std::vector<int>& paths_between(int u, int w) const { return between_[u][w]; }
  /// Position of basis path b inside paths_between(src, tgt).
  int position(int b) const { return position_[b]; }
  /// Basis index of an arrow (always a basis element).
  int arrow_basis(int a) const { return arrow_basis_[a]; }

  /// Vertex indices in a topological order (every arrow goes forward).
  const std::vector<int>& topo_order() const { return topo_; }

  bool relation_free() const { return relations_.empty(); }

  /// Product of two basis elements in normal form; empty if not composable or zero.
  template <class K>
  const SVec<K>& mul(int b1, int b2) const {
    const auto& t = table<K>();
    return t.prod[b1][b2];
  }

  template <class K>
  const MulTable<K>& table() const {
    const auto& t = std::get<MulTable<K>>(tables_);
    if (!t.valid) throw FieldMismatch("relations do not reduce to field " + field_of<K>().name());
    return t;
  }

  /// Human readable name of a basis path ("e1", "a", "a*b").
  std::string path_name(int b) const;
  /// Basis index of the path with the given arrow ids; -1 if it is not a basis path.
  int find_path(const std::vector<std::string>& arrows) const;
  int find_trivial(int vertex_id) const { return quiver_.vertex_index(vertex_id); }

  /// All paths of the quiver (basis or not), and lookup by arrow indices.
  const std::vector<Path>& all_paths() const { return all_; }
  /// Index into all_paths() of the nontrivial path with these arrow indices; -1 if not a path.
  int find_any(const std::vector<int>& arrows) const;

  /// Normal form of an arbitrary path (index into all_paths()).
  template <class K>
  const SVec<K>& normal_form(int any_index) const {
    return table<K>().nf[any_index];
  }

  friend AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<Relation>& relations);

 private:
  Quiver quiver_;
  std::vector<Relation> relations_;
  std::vector<int> arrow_src_, arrow_tgt_, arrow_basis_;
  std::vector<Path> all_;
  std::map<std::vector<int>, int> all_lookup_;
  std::vector<int> basis_any_;  // basis index -> all_ index
  std::vector<int> any_basis_;  // all_ index -> basis index or -1
  std::vector<Path> basis_;
  std::vector<std::vector<std::vector<int>>> between_;
  std::vector<int> position_;
  std::vector<int> topo_;
  std::tuple<MulTable<Q>, MulTable<GF2>, MulTable<GF3>, MulTable<GF5>, MulTable<GF7>> tables_;
};

/// Validate the quiver (distinct ids, declared endpoints, acyclic) and compute the path basis.
AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<Relation>& relations = {});

/// Path algebra of the opposite quiver; relations are reversed.
AlgebraPtr opposite(const PathAlgebra& alg);

/// Common fixtures (shared instances).
AlgebraPtr kronecker();
AlgebraPtr a2();
/// Linearly oriented A_n: 1 -> 2 -> ... -> n.
AlgebraPtr linear_an(int n);

}  // namespace siltlab
