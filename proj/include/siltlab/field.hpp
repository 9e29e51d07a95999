#pragma once

// Scalar types used throughout siltlab: exact rationals (GMP) and prime
// fields F_p for a fixed set of small primes. Algorithms are templated on
// the scalar type; runtime field selection goes through with_field().

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "siltlab/errors.hpp"

namespace siltlab {

using Q = mpq_class;

/// Prime field F_P with values kept in [0, P).
template <std::uint32_t P>
struct GF {
  static_assert(P >= 2);
  std::uint32_t v = 0;

  GF() = default;
  GF(long long x) {  // NOLINT(google-explicit-constructor)
    long long r = x % static_cast<long long>(P);
    if (r < 0) r += P;
    v = static_cast<std::uint32_t>(r);
  }

  static constexpr std::uint32_t characteristic = P;

  friend GF operator+(GF a, GF b) {
    GF r;
    r.v = (a.v + b.v) % P;
    return r;
  }
  friend GF operator-(GF a, GF b) {
    GF r;
    r.v = (a.v + P - b.v) % P;
    return r;
  }
  friend GF operator*(GF a, GF b) {
    GF r;
    r.v = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.v) * b.v) % P);
    return r;
  }
  GF operator-() const {
    GF r;
    r.v = (P - v) % P;
    return r;
  }
  GF inverse() const {
    if (v == 0) throw std::domain_error("division by zero in F_p");
    // Fermat: v^(P-2)
    std::uint64_t base = v, acc = 1;
    std::uint32_t e = P - 2;
    while (e) {
      if (e & 1u) acc = acc * base % P;
      base = base * base % P;
      e >>= 1;
    }
    GF r;
    r.v = static_cast<std::uint32_t>(acc);
    return r;
  }
  friend GF operator/(GF a, GF b) { return a * b.inverse(); }
  GF& operator+=(GF b) { return *this = *this + b; }
  GF& operator-=(GF b) { return *this = *this - b; }
  GF& operator*=(GF b) { return *this = *this * b; }
  GF& operator/=(GF b) { return *this = *this / b; }
  friend bool operator==(GF a, GF b) { return a.v == b.v; }
  friend bool operator!=(GF a, GF b) { return a.v != b.v; }
};

using GF2 = GF<2>;
using GF3 = GF<3>;
using GF5 = GF<5>;
using GF7 = GF<7>;

// ---- scalar traits -------------------------------------------------------

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Q> {
  static constexpr std::uint32_t characteristic = 0;
  static bool is_zero(const Q& x) { return sgn(x) == 0; }
  static Q inverse(const Q& x) {
    if (sgn(x) == 0) throw std::domain_error("division by zero in Q");
    return Q(1) / x;
  }
  static Q from_fraction(const mpz_class& num, const mpz_class& den) {
    Q r(num, den);
    r.canonicalize();
    return r;
  }
  static std::string to_string(const Q& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
  }
};

template <std::uint32_t P>
struct ScalarTraits<GF<P>> {
  static constexpr std::uint32_t characteristic = P;
  static bool is_zero(GF<P> x) { return x.v == 0; }
  static GF<P> inverse(GF<P> x) { return x.inverse(); }
  static GF<P> from_fraction(const mpz_class& num, const mpz_class& den) {
    mpz_class n = num % P, d = den % P;
    if (n < 0) n += P;
    if (d < 0) d += P;
    if (d == 0) throw FieldMismatch("denominator divisible by the characteristic");
    return GF<P>(n.get_si()) / GF<P>(d.get_si());
  }
  static std::string to_string(GF<P> x) { return std::to_string(x.v); }
};

template <class K>
inline bool is_zero(const K& x) {
  return ScalarTraits<K>::is_zero(x);
}

template <class K>
inline K inv(const K& x) {
  return ScalarTraits<K>::inverse(x);
}

template <class K>
inline std::string scalar_to_string(const K& x) {
  return ScalarTraits<K>::to_string(x);
}

/// Map an exact rational into K (reduction mod p for prime fields).
template <class K>
inline K from_rational(const Q& x) {
  return ScalarTraits<K>::from_fraction(x.get_num(), x.get_den());
}

/// Parse "p/q" or "p" into a rational.
Q parse_rational(const std::string& s);

/// Runtime description of a ground field: characteristic 0 means Q.
struct FieldSpec {
  std::uint32_t p = 0;

  static FieldSpec rational() { return {0}; }
  static FieldSpec prime(std::uint32_t p);

  bool is_finite() const { return p != 0; }
  std::string name() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Invoke fn.template operator()<K>() for the scalar type matching spec.
template <class Fn>
decltype(auto) with_field(FieldSpec spec, Fn&& fn) {
  switch (spec.p) {
    case 0: return fn.template operator()<Q>();
    case 2: return fn.template operator()<GF2>();
    case 3: return fn.template operator()<GF3>();
    case 5: return fn.template operator()<GF5>();
    case 7: return fn.template operator()<GF7>();
    default: throw FieldMismatch("unsupported field characteristic " + std::to_string(spec.p));
  }
}

template <class K>
inline FieldSpec field_of() {
  return FieldSpec{ScalarTraits<K>::characteristic};
}

}  // namespace siltlab
