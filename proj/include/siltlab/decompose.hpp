#pragma once

// Krull-Schmidt decomposition of complexes, isomorphism tests, summand
// multiplicities and minimal add(M)-approximations.
//
// For a minimal complex X, taking trivial-path coefficients of an
// endomorphism gives an algebra map End_K(X) -> prod_k End(top X^k) whose
// kernel is nilpotent. Idempotents are found in the image, lifted to chain
// level by E <- 3E^2 - 2E^3, and split degreewise.

#include <cmath>
#include <random>
#include <set>

#include "siltlab/complex.hpp"

namespace siltlab {

// ---- polynomials over K (coefficients from degree 0 up) ------------------------

template <class K>
using Poly = std::vector<K>;

namespace poly {

template <class K>
void trim(Poly<K>& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class K>
int degree(const Poly<K>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class K>
Poly<K> mul(const Poly<K>& a, const Poly<K>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<K> c(a.size() + b.size() - 1, K(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

template <class K>
Poly<K> sub(Poly<K> a, const Poly<K>& b) {
  if (a.size() < b.size()) a.resize(b.size(), K(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// a = q b + r.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(Poly<K> a, const Poly<K>& b) {
  trim(a);
  if (degree(a) < degree(b)) return {{}, a};
  Poly<K> q(a.size() - b.size() + 1, K(0));
  const K lead = inv(b.back());
  for (int i = degree(a) - degree(b); i >= 0; --i) {
    K c = a[i + b.size() - 1] * lead;
    q[i] = c;
    if (is_zero(c)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

template <class K>
Poly<K> monic(Poly<K> p) {
  trim(p);
  if (p.empty()) return p;
  K l = inv(p.back());
  for (auto& c : p) c *= l;
  return p;
}

/// (g, s, t) with s a + t b = g, g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> ext_gcd(Poly<K> a, Poly<K> b) {
  Poly<K> s0{K(1)}, s1{}, t0{}, t1{K(1)};
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = b;
    b = r;
    auto s2 = sub(s0, mul(q, s1));
    auto t2 = sub(t0, mul(q, t1));
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  K l = inv(a.back());
  for (auto& c : a) c *= l;
  for (auto& c : s0) c *= l;
  for (auto& c : t0) c *= l;
  return {a, s0, t0};
}

template <class K>
Poly<K> derivative(const Poly<K>& p) {
  Poly<K> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * K(static_cast<long>(i)));
  trim(d);
  return d;
}

template <class K>
K eval(const Poly<K>& p, const K& x) {
  K acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Roots in the prime field or, for Q, by the rational root theorem (skipped when coefficients are huge).
template <class K>
std::vector<K> roots(const Poly<K>& p) {
  std::vector<K> out;
  if (degree(p) < 1) return out;
  if constexpr (std::is_same_v<K, Q>) {
    // integer coefficients
    mpz_class l = 1;
    for (const auto& c : p) l = lcm(l, c.get_den());
    std::vector<mpz_class> z;
    for (const auto& c : p) z.push_back(mpz_class(c * l));
    std::size_t low = 0;
    while (low < z.size() && z[low] == 0) ++low;
    if (low > 0) out.push_back(Q(0));
    mpz_class a0 = abs(z[low]), an = abs(z.back());
    if (a0 > 1000000 || an > 1000000) return out;
    auto divisors = [](long n) {
      std::vector<long> d;
      for (long i = 1; i * i <= n; ++i)
        if (n % i == 0) {
          d.push_back(i);
          if (i * i != n) d.push_back(n / i);
        }
      return d;
    };
    std::set<Q> seen;
    for (long u : divisors(a0.get_si()))
      for (long v : divisors(an.get_si()))
        for (int s : {1, -1}) {
          Q c(s * u, v);
          c.canonicalize();
          if (seen.count(c)) continue;
          seen.insert(c);
          if (eval(p, c) == 0) out.push_back(c);
        }
    std::sort(out.begin(), out.end());
  } else {
    for (std::uint32_t v = 0; v < K::characteristic; ++v)
      if (is_zero(eval(p, K(static_cast<long long>(v))))) out.push_back(K(static_cast<long long>(v)));
  }
  return out;
}

}  // namespace poly

// ---- tops of endomorphisms ------------------------------------------------------

template <class K>
using Tops = std::vector<Mat<K>>;  // one square matrix per degree of X

template <class K>
Tops<K> tops(const ChainMap<K>& f, const Complex<K>& x) {
  Tops<K> t;
  for (int k = x.lo; k <= x.hi(); ++k) t.push_back(top_matrix(f.at(k), *x.alg));
  return t;
}

template <class K>
SVec<K> flatten(const Tops<K>& t) {
  SVec<K> v;
  int off = 0;
  for (const auto& m : t) {
    for (std::size_t i = 0; i < m.a.size(); ++i)
      if (!is_zero(m.a[i])) v.emplace_back(off + static_cast<int>(i), m.a[i]);
    off += static_cast<int>(m.a.size());
  }
  return v;
}

template <class K>
Tops<K> tops_mul(const Tops<K>& a, const Tops<K>& b) {
  Tops<K> c;
  for (std::size_t i = 0; i < a.size(); ++i) c.push_back(a[i] * b[i]);
  return c;
}

template <class K>
Tops<K> tops_identity(const Complex<K>& x) {
  Tops<K> t;
  for (const auto& term : x.terms) t.push_back(Mat<K>::identity(static_cast<int>(term.size())));
  return t;
}

template <class K>
bool tops_nilpotent(const Tops<K>& t) {
  for (const auto& m : t) {
    Mat<K> p = m;
    for (int i = 1; i < std::max(1, m.rows); i *= 2) p = p * p;
    if (!p.is_zero_matrix()) return false;
  }
  return true;
}

template <class K>
int tops_size(const Tops<K>& t) {
  int n = 0;
  for (const auto& m : t) n += m.rows;
  return n;
}

/// Minimal polynomial of a tuple of matrices acting together.
template <class K>
Poly<K> min_poly(const Tops<K>& x) {
  const int n = tops_size(x);
  Tops<K> power;
  for (const auto& m : x) power.push_back(Mat<K>::identity(m.rows));
  int width = 0;
  for (const auto& m : x) width += static_cast<int>(m.a.size());
  Echelon<K> e(width, true);
  for (int d = 0; d <= n; ++d) {
    if (!e.insert(flatten(power))) {
      const auto& dep = e.dependencies().back();
      Poly<K> p(d + 1, K(0));
      for (const auto& [i, c] : dep) p[i] = c;
      return poly::monic(p);
    }
    power = tops_mul(power, x);
  }
  throw DecompositionFailure("minimal polynomial degree exceeds matrix size");
}

/// p(f) for an endomorphism f of x, at chain level.
template <class K>
ChainMap<K> eval_poly(const Poly<K>& p, const ChainMap<K>& f) {
  auto id = identity_map(f.src);
  ChainMap<K> acc = zero_map(f.src, f.src);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = add(compose(acc, f), id, *it);
  return acc;
}

/// Residue of an endomorphism of an indecomposable complex whose endomorphism
/// ring has residue field K: the unique c with top(f) - c nilpotent.
template <class K>
K residue(const ChainMap<K>& f, const Complex<K>& x) {
  Tops<K> t = tops(f, x);
  const int n = tops_size(t);
  if (n == 0) return K(0);
  if constexpr (std::is_same_v<K, Q>) {
    Q tr = 0;
    for (const auto& m : t)
      for (int i = 0; i < m.rows; ++i) tr += m(i, i);
    return tr / n;
  } else {
    for (std::uint32_t v = 0; v < K::characteristic; ++v) {
      Tops<K> s = t;
      for (auto& m : s)
        for (int i = 0; i < m.rows; ++i) m(i, i) -= K(static_cast<long long>(v));
      if (tops_nilpotent(s)) return K(static_cast<long long>(v));
    }
    throw DecompositionFailure("endomorphism has no residue in the ground field");
  }
}

// ---- idempotents ----------------------------------------------------------------

/// Chain-level idempotent from one that is idempotent modulo the radical.
template <class K>
ChainMap<K> lift_idempotent(ChainMap<K> e) {
  for (int it = 0; it < 64; ++it) {
    auto e2 = compose(e, e);
    if (maps_equal(e2, e)) return e;
    auto e3 = compose(e2, e);
    e = add(scaled(e2, K(3)), e3, K(-2));
  }
  throw DecompositionFailure("idempotent lifting did not converge");
}

template <class K>
struct Split {
  Complex<K> image;
  ChainMap<K> iota;  // image -> X
  ChainMap<K> pi;    // X -> image
};

/// Image of a chain-level idempotent as a complex with inclusion and projection.
template <class K>
Split<K> split_idempotent(const ChainMap<K>& e, const CPtr<K>& x) {
  const auto& A = *x->alg;
  Complex<K> y;
  y.alg = x->alg;
  y.lo = x->lo;
  std::vector<PathMatrix<K>> iota, pibar;
  for (int k = x->lo; k <= x->hi(); ++k) {
    PathMatrix<K> ek = e.at(k);
    Mat<K> t = top_matrix(ek, A);
    Echelon<K> rows(t.cols);
    std::vector<int> R;
    for (int i = 0; i < t.rows; ++i)
      if (rows.insert(t.row_sparse(i))) R.push_back(i);
    Echelon<K> cols(static_cast<int>(R.size()));
    std::vector<int> C;
    for (int j = 0; j < t.cols; ++j) {
      SVec<K> v;
      for (std::size_t r = 0; r < R.size(); ++r)
        if (!is_zero(t(R[r], j))) v.emplace_back(static_cast<int>(r), t(R[r], j));
      if (cols.insert(v)) C.push_back(j);
    }
    std::vector<int> all(ek.ncols());
    for (int j = 0; j < ek.ncols(); ++j) all[j] = j;
    PathMatrix<K> io = select(ek, R, all);  // Y^k -> X^k
    Mat<K> sq(static_cast<int>(R.size()), static_cast<int>(C.size()));
    for (std::size_t r = 0; r < R.size(); ++r)
      for (std::size_t c = 0; c < C.size(); ++c) sq(r, c) = t(R[r], C[c]);
    auto sqi = inverse(sq);
    if (!sqi) throw DecompositionFailure("idempotent splitting: singular minor");
    Mat<K> pb(ek.nrows(), static_cast<int>(R.size()));
    for (std::size_t c = 0; c < C.size(); ++c)
      for (std::size_t r = 0; r < R.size(); ++r) pb(C[c], r) = (*sqi)(c, r);
    y.terms.push_back(io.rows);
    iota.push_back(io);
    pibar.push_back(scalar_matrix(ek.rows, io.rows, pb));
  }
  std::vector<PathMatrix<K>> pi;
  for (std::size_t i = 0; i < iota.size(); ++i) {
    PathMatrix<K> ek = e.at(x->lo + static_cast<int>(i));
    PathMatrix<K> ep = mul(ek, pibar[i], A);
    PathMatrix<K> u = mul(iota[i], pibar[i], A);
    pi.push_back(mul(ep, invert_unit(u, A), A));
  }
  for (int k = x->lo; k < x->hi(); ++k) {
    int i = k - x->lo;
    y.d.push_back(mul(mul(iota[i], x->diff(k), A), pi[i + 1], A));
  }
  y.trim();
  auto ys = share(y);
  ChainMap<K> io{ys, x, {}}, pr{x, ys, {}};
  for (std::size_t i = 0; i < iota.size(); ++i) {
    int k = x->lo + static_cast<int>(i);
    io.set(k, iota[i]);
    pr.set(k, pi[i]);
  }
  Split<K> s{y, io, pr};
  return s;
}

namespace detail {

/// Idempotent p(x) separating the generalised eigenvalue c of x from the rest; nullopt if none.
template <class K>
std::optional<Poly<K>> separating_poly(const Poly<K>& mu) {
  for (const K& c : poly::roots(mu)) {
    Poly<K> lin{K(-c), K(1)};
    Poly<K> pc{K(1)}, g = mu;
    while (true) {
      auto [q, r] = poly::divmod(g, lin);
      if (!r.empty()) break;
      g = q;
      pc = poly::mul(pc, lin);
    }
    if (poly::degree(g) < 1) continue;
    auto [one, s, t] = poly::ext_gcd(pc, g);
    (void)s;
    // t g = 1 mod pc, 0 mod g
    return poly::divmod(poly::mul(t, g), mu).second;
  }
  return std::nullopt;
}

template <class K>
K random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return K(static_cast<long>(d(rng)));
}

}  // namespace detail

template <class K>
struct EndData {
  CPtr<K> x;
  HomSpace<K> end;
  std::vector<Tops<K>> top;   // tops of the basis
  std::vector<int> bbar;      // basis indices whose tops span the image
};

template <class K>
EndData<K> end_data(const CPtr<K>& x) {
  EndData<K> d{x, hom_k(x, x), {}, {}};
  int width = 0;
  for (const auto& t : x->terms) width += static_cast<int>(t.size() * t.size());
  Echelon<K> e(width);
  for (int i = 0; i < d.end.dim(); ++i) {
    d.top.push_back(tops(d.end.basis[i], *x));
    if (e.insert(flatten(d.top.back()))) d.bbar.push_back(i);
  }
  return d;
}

/// A chain-level idempotent of X that is neither 0 nor 1 up to homotopy, if one is found.
template <class K>
std::optional<ChainMap<K>> find_idempotent(const EndData<K>& d) {
  const auto& B = d.end.basis;
  const int n = static_cast<int>(d.bbar.size());
  if (n <= 1) return std::nullopt;
  auto try_element = [&](const ChainMap<K>& f) -> std::optional<ChainMap<K>> {
    auto mu = min_poly(tops(f, *d.x));
    auto p = detail::separating_poly(mu);
    if (!p) return std::nullopt;
    return lift_idempotent(eval_poly(*p, f));
  };
  for (int i = 0; i < n; ++i)
    if (auto e = try_element(B[d.bbar[i]])) return e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (auto e = try_element(add(B[d.bbar[i]], B[d.bbar[j]]))) return e;
  std::mt19937 rng(12345);
  for (int r = 0; r < 32; ++r) {
    ChainMap<K> f = zero_map(d.x, d.x);
    for (int i : d.bbar) f = add(f, B[i], detail::random_scalar<K>(rng));
    if (auto e = try_element(f)) return e;
  }
  if constexpr (!std::is_same_v<K, Q>) {
    // exhaustive search in the image algebra
    double states = std::pow(static_cast<double>(K::characteristic), n);
    if (states <= 65536.0) {
      std::vector<int> c(n, 0);
      auto id = tops_identity(*d.x);
      while (true) {
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == static_cast<int>(K::characteristic)) c[i++] = 0;
        if (i == c.size()) break;
        Tops<K> t = tops_identity(*d.x);
        for (auto& m : t) m = Mat<K>(m.rows, m.cols);
        for (int j = 0; j < n; ++j)
          for (std::size_t b = 0; b < t.size(); ++b)
            for (std::size_t q = 0; q < t[b].a.size(); ++q) t[b].a[q] += K(c[j]) * d.top[d.bbar[j]][b].a[q];
        if (!(flatten(tops_mul(t, t)) == flatten(t))) continue;
        if (flatten(t).empty() || flatten(t) == flatten(id)) continue;
        ChainMap<K> f = zero_map(d.x, d.x);
        for (int j = 0; j < n; ++j) f = add(f, B[d.bbar[j]], K(c[j]));
        return lift_idempotent(f);
      }
    }
  }
  return std::nullopt;
}

/// Certify that the endomorphism ring of X is local (X indecomposable).
template <class K>
bool certify_local(const EndData<K>& d) {
  const int n = static_cast<int>(d.bbar.size());
  if (n <= 1) return true;
  if constexpr (std::is_same_v<K, Q>) {
    // radical of the image algebra = kernel of the trace form
    Mat<Q> g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto p = tops_mul(d.top[d.bbar[i]], d.top[d.bbar[j]]);
        Q tr = 0;
        for (const auto& m : p)
          for (int r = 0; r < m.rows; ++r) tr += m(r, r);
        g(i, j) = tr;
      }
    const int s = rank(g);
    if (s == 1) return true;
    // division algebra test for a commutative quotient generated by one element
    for (int i = 0; i < n; ++i) {
      auto mu = min_poly(d.top[d.bbar[i]]);
      auto [gg, a, b] = poly::ext_gcd(mu, poly::derivative(mu));
      auto sqf = poly::divmod(mu, gg).first;
      if (poly::degree(sqf) == s && s <= 3 && poly::roots(sqf).empty()) return true;
    }
    return false;
  } else {
    double states = std::pow(static_cast<double>(K::characteristic), n);
    return states <= 65536.0;  // exhaustive search in find_idempotent found nothing
  }
}

namespace detail {

template <class K>
std::string serialize(const Complex<K>& x) {
  std::string s = std::to_string(x.lo) + "[";
  for (const auto& t : x.terms) {
    for (int v : t) s += std::to_string(v) + ",";
    s += ";";
  }
  s += "]";
  for (const auto& m : x.d)
    for (int r = 0; r < m.nrows(); ++r)
      for (const auto& e : m.e[r])
        s += std::to_string(r) + ":" + std::to_string(e.col) + ":" + std::to_string(e.path) + ":" + scalar_to_string(e.c) + " ";
  return s;
}

template <class K>
void decompose_rec(const Complex<K>& x, std::vector<Complex<K>>& out, int depth) {
  if (x.is_zero()) return;
  if (depth > 256) throw DecompositionFailure("decomposition recursion too deep");
  auto xs = share(x);
  auto d = end_data(xs);
  if (auto e = find_idempotent(d)) {
    auto s1 = split_idempotent(*e, xs);
    auto s2 = split_idempotent(add(identity_map(xs), *e, K(-1)), xs);
    decompose_rec(minimal_form(s1.image), out, depth + 1);
    decompose_rec(minimal_form(s2.image), out, depth + 1);
    return;
  }
  if (!certify_local(d)) throw DecompositionFailure("could not split or certify a local endomorphism ring");
  out.push_back(x);
}

}  // namespace detail

/// Sort key: (g-vector, dim H^0, serialized differential).
template <class K>
std::tuple<std::vector<long long>, DimVector, std::string> canonical_key(const Complex<K>& x) {
  return {g_vector(x), H0(x).dim, detail::serialize(x)};
}

/// Indecomposable summands of X (with repetition), in canonical order.
template <class K>
std::vector<Complex<K>> decompose(const Complex<K>& x) {
  std::vector<Complex<K>> out;
  detail::decompose_rec(minimal_form(x), out, 0);
  std::sort(out.begin(), out.end(),
            [](const Complex<K>& a, const Complex<K>& b) { return canonical_key(a) < canonical_key(b); });
  return out;
}

/// Isomorphism test for indecomposable complexes (minimal form assumed).
template <class K>
bool isomorphic_indecomposables(const Complex<K>& a, const Complex<K>& b) {
  if (g_vector(a) != g_vector(b) || a.size() != b.size()) return false;
  if (a.is_zero()) return true;
  auto as = share(a), bs = share(b);
  auto ab = hom_k(as, bs), ba = hom_k(bs, as);
  for (const auto& f : ab.basis)
    for (const auto& g : ba.basis)
      if (!tops_nilpotent(tops(compose(f, g), a))) return true;
  return false;
}

/// Decomposition grouped into isomorphism classes with multiplicities.
template <class K>
std::vector<std::pair<Complex<K>, int>> decompose_grouped(const Complex<K>& x) {
  std::vector<std::pair<Complex<K>, int>> out;
  for (auto& s : decompose(x)) {
    bool found = false;
    for (auto& [c, m] : out)
      if (isomorphic_indecomposables(c, s)) {
        ++m;
        found = true;
        break;
      }
    if (!found) out.emplace_back(std::move(s), 1);
  }
  return out;
}

template <class K>
bool is_isomorphic(const Complex<K>& x, const Complex<K>& y) {
  auto mx = minimal_form(x), my = minimal_form(y);
  if (mx.size() != my.size() || g_vector(mx) != g_vector(my)) return false;
  if (mx.is_zero()) return true;
  auto gx = decompose_grouped(mx), gy = decompose_grouped(my);
  if (gx.size() != gy.size()) return false;
  std::vector<char> used(gy.size(), 0);
  for (const auto& [c, m] : gx) {
    bool ok = false;
    for (std::size_t j = 0; j < gy.size() && !ok; ++j)
      if (!used[j] && gy[j].second == m && isomorphic_indecomposables(c, gy[j].first)) {
        used[j] = 1;
        ok = true;
      }
    if (!ok) return false;
  }
  return true;
}

/// Number of copies of the indecomposable T in X: rank of the residue pairing
/// Hom(T, X) x Hom(X, T) -> End(T) -> K.
template <class K>
int multiplicity(const CPtr<K>& t, const CPtr<K>& x) {
  auto tx = hom_k(t, x), xt = hom_k(x, t);
  Mat<K> p(tx.dim(), xt.dim());
  for (int i = 0; i < tx.dim(); ++i)
    for (int j = 0; j < xt.dim(); ++j) p(i, j) = residue(compose(tx.basis[i], xt.basis[j]), *t);
  return rank(p);
}

/// Multiplicities of the given pairwise non-isomorphic indecomposables in X,
/// and whether they exhaust X (X in add of the candidates).
template <class K>
struct AddDecomposition {
  std::vector<int> mult;
  bool complete = false;
};

template <class K>
AddDecomposition<K> decompose_over(const Complex<K>& x, const std::vector<Complex<K>>& candidates) {
  auto mx = share(minimal_form(x));
  AddDecomposition<K> r;
  int covered = 0;
  std::vector<long long> g(x.alg->num_vertices(), 0);
  for (const auto& c : candidates) {
    auto cm = share(minimal_form(c));
    int m = multiplicity(cm, mx);
    r.mult.push_back(m);
    covered += m * cm->size();
    auto gc = g_vector(*cm);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += m * gc[i];
  }
  r.complete = covered == mx->size() && g == g_vector(*mx);
  return r;
}

template <class K>
bool in_add(const Complex<K>& x, const std::vector<Complex<K>>& candidates) {
  return decompose_over(x, candidates).complete;
}

// ---- minimal approximations -----------------------------------------------------

template <class K>
struct Approximation {
  Complex<K> target;     // sum of copies of the M_j
  ChainMap<K> map;       // X -> target (left) or target -> X (right)
  std::vector<int> mult;
};

namespace detail {

/// Radical morphisms M_i -> M_j between members of a list of pairwise non-isomorphic indecomposables.
template <class K>
std::vector<ChainMap<K>> radical_maps(const std::vector<CPtr<K>>& ms, int i, int j) {
  auto h = hom_k(ms[i], ms[j]);
  if (i != j) return h.basis;
  std::vector<ChainMap<K>> out;
  auto id = identity_map(ms[i]);
  for (const auto& b : h.basis) {
    K c = residue(b, *ms[i]);
    auto r = add(b, id, K(-c));
    if (!h.is_null_homotopic(r)) out.push_back(r);
  }
  return out;
}

}  // namespace detail

/// Minimal left add(M)-approximation X -> M^a. With `through` = s : X -> Y,
/// only maps not already of the form s b are approximated, so that (s, f)
/// is a left approximation.
template <class K>
Approximation<K> left_approximation(const CPtr<K>& x, const std::vector<CPtr<K>>& ms,
                                    const std::optional<ChainMap<K>>& through = std::nullopt) {
  const int n = static_cast<int>(ms.size());
  std::vector<HomSpace<K>> hx;
  for (const auto& m : ms) hx.push_back(hom_k(x, m));
  std::vector<ChainMap<K>> chosen;
  std::vector<int> mult(n, 0);
  Complex<K> target = zero_complex<K>(x->alg);
  for (int j = 0; j < n; ++j) {
    Echelon<K> e(hx[j].dim());
    auto push = [&](const ChainMap<K>& f) {
      auto c = hx[j].coords(f);
      SVec<K> v;
      for (std::size_t t = 0; t < c.size(); ++t)
        if (!is_zero(c[t])) v.emplace_back(static_cast<int>(t), c[t]);
      return e.insert(v);
    };
    if (hx[j].dim() == 0) continue;
    if (through)
      for (const auto& b : hom_k(through->tgt, ms[j]).basis) push(compose(*through, b));
    for (int i = 0; i < n; ++i) {
      if (hx[i].dim() == 0) continue;
      for (const auto& r : detail::radical_maps(ms, i, j))
        for (const auto& a : hx[i].basis) push(compose(a, r));
    }
    for (const auto& b : hx[j].basis)
      if (push(b)) {
        chosen.push_back(b);
        target = direct_sum(target, *ms[j]);
        ++mult[j];
      }
  }
  auto ts = share(target);
  ChainMap<K> f{x, ts, {}};
  // assemble columns: components in order of `chosen`
  for (int k = x->lo; k <= x->hi(); ++k) {
    PathMatrix<K> row(x->term(k), {});
    for (const auto& c : chosen) {
      auto m = c.at(k);
      m.rows = x->term(k);
      m.cols = c.tgt->term(k);
      row = hstack(row, m);
    }
    row.cols = ts->term(k);
    f.set(k, row);
  }
  return {target, f, mult};
}

/// Minimal right add(M)-approximation M^a -> X.
template <class K>
Approximation<K> right_approximation(const CPtr<K>& x, const std::vector<CPtr<K>>& ms) {
  const int n = static_cast<int>(ms.size());
  std::vector<HomSpace<K>> hx;
  for (const auto& m : ms) hx.push_back(hom_k(m, x));
  std::vector<ChainMap<K>> chosen;
  std::vector<int> mult(n, 0);
  Complex<K> source = zero_complex<K>(x->alg);
  for (int j = 0; j < n; ++j) {
    Echelon<K> e(hx[j].dim());
    auto push = [&](const ChainMap<K>& f) {
      auto c = hx[j].coords(f);
      SVec<K> v;
      for (std::size_t t = 0; t < c.size(); ++t)
        if (!is_zero(c[t])) v.emplace_back(static_cast<int>(t), c[t]);
      return e.insert(v);
    };
    for (int i = 0; i < n; ++i) {
      if (hx[i].dim() == 0) continue;
      for (const auto& r : detail::radical_maps(ms, j, i))
        for (const auto& b : hx[i].basis) push(compose(r, b));
    }
    for (const auto& b : hx[j].basis)
      if (push(b)) {
        chosen.push_back(b);
        source = direct_sum(source, *ms[j]);
        ++mult[j];
      }
  }
  auto ss = share(source);
  ChainMap<K> f{ss, x, {}};
  int lo = std::min(ss->is_zero() ? x->lo : ss->lo, x->lo), hi = std::max(ss->is_zero() ? x->hi() : ss->hi(), x->hi());
  for (int k = lo; k <= hi; ++k) {
    PathMatrix<K> col({}, x->term(k));
    for (const auto& c : chosen) {
      auto m = c.at(k);
      m.rows = c.src->term(k);
      m.cols = x->term(k);
      col = vstack(col, m);
    }
    col.rows = ss->term(k);
    f.set(k, col);
  }
  return {source, f, mult};
}

}  // namespace siltlab
