#pragma once

// JSON encodings. Scalars travel as strings ("p/q" over Q, residues over F_p),
// vertices by their ids, paths as arrow ids joined by '*' ("e<id>" for the
// trivial path at a vertex).

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "siltlab/stability.hpp"

namespace siltlab::io {

using json = nlohmann::json;

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline Q rational_of(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Q(j.get<long>());
  throw InvalidInput("expected a rational string \"p/q\" or an integer");
}

template <class K>
std::string scalar(const K& x) {
  return scalar_to_string(x);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

// ---- algebras ----------------------------------------------------------------------

inline std::vector<std::string> path_arrows(const json& j) {
  if (j.is_array()) return j.get<std::vector<std::string>>();
  return split(j.get<std::string>(), '*');
}

inline AlgebraPtr algebra_from_json(const json& j) {
  Quiver q;
  try {
    q.vertices = j.at("vertices").get<std::vector<int>>();
    for (const auto& a : j.at("arrows"))
      q.arrows.push_back({a.at("id").get<std::string>(), a.at("src").get<int>(), a.at("tgt").get<int>()});
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("algebra: ") + e.what());
  }
  std::vector<Relation> rels;
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) {
      Relation rel;
      for (const auto& t : r) rel.push_back({path_arrows(t.at("path")), rational_of(t.value("coef", json("1")))});
      rels.push_back(rel);
    }
  return build_algebra(q, rels);
}

inline json algebra_to_json(const PathAlgebra& A) {
  json j;
  j["vertices"] = A.quiver().vertices;
  j["arrows"] = json::array();
  for (const auto& a : A.quiver().arrows) j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  j["relations"] = json::array();
  for (const auto& r : A.relations()) {
    json rj = json::array();
    for (const auto& t : r) {
      std::string p;
      for (std::size_t i = 0; i < t.path.size(); ++i) p += (i ? "*" : "") + t.path[i];
      rj.push_back({{"path", p}, {"coef", t.coef.get_str()}});
    }
    j["relations"].push_back(rj);
  }
  return j;
}

/// "kronecker", "a2", "a<n>" or a JSON file.
inline AlgebraPtr load_algebra(const std::string& spec) {
  if (spec == "kronecker") return kronecker();
  if (spec == "a2") return a2();
  if (spec.size() > 1 && spec[0] == 'a' && std::all_of(spec.begin() + 1, spec.end(), ::isdigit))
    return linear_an(std::stoi(spec.substr(1)));
  return algebra_from_json(read_file(spec));
}

// ---- representations -----------------------------------------------------------------

template <class K>
Representation<K> rep_from_json(const AlgebraPtr& alg, const json& j) {
  const auto& A = *alg;
  Representation<K> m;
  m.alg = alg;
  m.dim = j.at("dim").get<DimVector>();
  if (static_cast<int>(m.dim.size()) != A.num_vertices()) throw InvalidInput("dimension vector has wrong length");
  const auto& mats = j.contains("matrices") ? j.at("matrices") : json::object();
  for (int a = 0; a < A.num_arrows(); ++a) {
    const auto& id = A.quiver().arrows[a].id;
    Mat<K> x(m.dim[A.arrow_src(a)], m.dim[A.arrow_tgt(a)]);
    if (mats.contains(id)) {
      const auto& rows = mats.at(id);
      if (static_cast<int>(rows.size()) != x.rows) throw InvalidInput("matrix '" + id + "' has wrong shape");
      for (int r = 0; r < x.rows; ++r) {
        if (static_cast<int>(rows[r].size()) != x.cols) throw InvalidInput("matrix '" + id + "' has wrong shape");
        for (int c = 0; c < x.cols; ++c) x(r, c) = from_rational<K>(rational_of(rows[r][c]));
      }
    }
    m.mats.push_back(x);
  }
  m.validate();
  return m;
}

template <class K>
json rep_to_json(const Representation<K>& m) {
  const auto& A = *m.alg;
  json j;
  j["dim"] = m.dim;
  j["matrices"] = json::object();
  for (int a = 0; a < A.num_arrows(); ++a) {
    json rows = json::array();
    for (int r = 0; r < m.mats[a].rows; ++r) {
      json row = json::array();
      for (int c = 0; c < m.mats[a].cols; ++c) row.push_back(scalar(m.mats[a](r, c)));
      rows.push_back(row);
    }
    j["matrices"][A.quiver().arrows[a].id] = rows;
  }
  return j;
}

// ---- complexes ---------------------------------------------------------------------------

inline int path_of(const PathAlgebra& A, const std::string& name, int u, int w) {
  if (name == "e") {
    if (u != w) throw InvalidInput("trivial path between different vertices");
    return A.trivial(u);
  }
  if (name.size() > 1 && name[0] == 'e' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
    int v = A.find_trivial(std::stoi(name.substr(1)));
    if (v == u && v == w) return A.trivial(v);
  }
  int p = A.find_path(split(name, '*'));
  if (p < 0) throw InvalidInput("'" + name + "' is not a basis path");
  const auto& bp = A.basis_path(p);
  if (bp.src != u || bp.tgt != w) throw InvalidInput("path '" + name + "' has the wrong endpoints");
  return p;
}

template <class K>
PathMatrix<K> matrix_from_json(const PathAlgebra& A, const std::vector<int>& rows, const std::vector<int>& cols,
                               const json& j) {
  PathMatrix<K> m(rows, cols);
  if (j.is_null()) return m;
  if (static_cast<int>(j.size()) != m.nrows()) throw InvalidInput("differential has the wrong number of rows");
  for (int r = 0; r < m.nrows(); ++r) {
    if (static_cast<int>(j[r].size()) != m.ncols()) throw InvalidInput("differential has the wrong number of columns");
    for (int c = 0; c < m.ncols(); ++c) {
      const json entry = j[r][c].is_object() ? json::array({j[r][c]}) : j[r][c];
      for (const auto& t : entry)
        m.add(r, c, path_of(A, t.at("path").get<std::string>(), rows[r], cols[c]),
              from_rational<K>(rational_of(t.value("coef", json("1")))));
    }
  }
  return m;
}

template <class K>
json matrix_to_json(const PathAlgebra& A, const PathMatrix<K>& m) {
  json j = json::array();
  for (int r = 0; r < m.nrows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.ncols(); ++c) row.push_back(json::array());
    for (const auto& e : m.e[r]) row[e.col].push_back({{"path", A.path_name(e.path)}, {"coef", scalar(e.c)}});
    j.push_back(row);
  }
  return j;
}

inline std::vector<int> vertex_indices(const PathAlgebra& A, const json& ids) {
  std::vector<int> out;
  for (int id : ids.get<std::vector<int>>()) out.push_back(A.quiver().vertex_index(id));
  return out;
}

inline std::vector<int> vertex_ids(const PathAlgebra& A, const std::vector<int>& idx) {
  std::vector<int> out;
  for (int v : idx) out.push_back(A.quiver().vertices[v]);
  return out;
}

/// Two-term form {"neg", "zero", "d"}, or {"lo", "terms", "d"} for other windows.
template <class K>
Complex<K> complex_from_json(const AlgebraPtr& alg, const json& j) {
  const auto& A = *alg;
  Complex<K> x;
  x.alg = alg;
  if (j.contains("neg") || j.contains("zero")) {
    auto neg = vertex_indices(A, j.value("neg", json::array()));
    auto zero = vertex_indices(A, j.value("zero", json::array()));
    json d = j.contains("d") ? j.at("d") : json();
    return two_term<K>(alg, neg, zero, matrix_from_json<K>(A, neg, zero, d));
  }
  x.lo = j.at("lo").get<int>();
  for (const auto& t : j.at("terms")) x.terms.push_back(vertex_indices(A, t));
  const auto& ds = j.at("d");
  if (ds.size() + 1 != x.terms.size()) throw InvalidInput("expected one differential per pair of terms");
  for (std::size_t i = 0; i < ds.size(); ++i) x.d.push_back(matrix_from_json<K>(A, x.terms[i], x.terms[i + 1], ds[i]));
  validate(x);
  return x;
}

template <class K>
json complex_to_json(const Complex<K>& x) {
  const auto& A = *x.alg;
  json j;
  if (x.is_zero() || (x.lo >= -1 && x.hi() <= 0)) {
    j["neg"] = vertex_ids(A, x.term(-1));
    j["zero"] = vertex_ids(A, x.term(0));
    j["d"] = matrix_to_json(A, x.diff(-1));
    return j;
  }
  j["lo"] = x.lo;
  j["terms"] = json::array();
  for (const auto& t : x.terms) j["terms"].push_back(vertex_ids(A, t));
  j["d"] = json::array();
  for (const auto& d : x.d) j["d"].push_back(matrix_to_json(A, d));
  return j;
}

// ---- stability data -------------------------------------------------------------------------

inline Theta parse_theta(const std::string& s, int l) {
  Theta t;
  for (const auto& part : split(s, ',')) {
    if (part.find_first_of(".eE") != std::string::npos && part.find_first_not_of("+-0123456789/ ") != std::string::npos)
      throw InvalidInput("theta entries must be rational (\"p/q\")");
    t.push_back(parse_rational(part));
  }
  if (static_cast<int>(t.size()) != l) throw InvalidInput("theta must have " + std::to_string(l) + " entries");
  return t;
}

inline DimVector parse_dims(const std::string& s, int l) {
  DimVector d;
  for (const auto& part : split(s, ',')) d.push_back(std::stoi(part));
  if (static_cast<int>(d.size()) != l) throw InvalidInput("dimension bound must have " + std::to_string(l) + " entries");
  for (int x : d)
    if (x < 0) throw InvalidInput("dimension bound must be nonnegative");
  return d;
}

inline json vec_json(const Theta& t) {
  json j = json::array();
  for (const auto& x : t) j.push_back(x.get_str());
  return j;
}

inline json cone_to_json(const Cone& c) {
  json j;
  j["generators"] = json::array();
  for (const auto& g : c.generators) j["generators"].push_back(vec_json(g));
  j["halfspaces"] = json::array();
  for (const auto& h : c.halfspaces)
    j["halfspaces"].push_back({{"normal", vec_json(h.normal)}, {"relation", h.equality ? "=0" : ">=0"}});
  return j;
}

template <class K>
json silting_to_json(const SiltingComplex<K>& t) {
  json j;
  j["g"] = t.g();
  j["gvectors"] = t.gvecs;
  j["summands"] = json::array();
  for (const auto& s : t.summands) j["summands"].push_back(complex_to_json(s));
  return j;
}

inline json report_header(const PathAlgebra& A, const std::string& field) {
  json j;
  j["basis"] = "g-vectors and theta in the basis ([P_v]) ordered as the vertex list";
  j["vertices"] = A.quiver().vertices;
  j["basis_note"] = "for the Kronecker quiver 1 => 2 some sources list coordinates as ([P_2],[P_1])";
  j["field"] = field;
  return j;
}

}  // namespace siltlab::io
