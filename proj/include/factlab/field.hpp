#pragma once

// Exact scalars: prime-field residues (Fp) and arbitrary-precision rationals.
// Both behave as ordinary value types with arithmetic operators, so the rest of
// the library is written once, templated on the scalar.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace factlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Deterministic Miller-Rabin, exact for every n < 2^32.
bool is_prime_u32(std::uint64_t n);

/// Residue modulo an odd prime p < 2^31.
///
/// The modulus travels with the value. A default-constructed element is an
/// unbound zero (p == 0) that adopts the modulus of whatever it is combined
/// with; this keeps Eigen's default construction of scalars harmless. Two
/// unbound values combine as plain integers, as Eigen's literal 0 and 1 do.
struct Fp {
  std::uint32_t v = 0;
  std::uint32_t p = 0;

  friend Fp operator+(Fp a, Fp b) {
    const std::uint32_t m = a.p ? a.p : b.p;
    std::uint64_t s = std::uint64_t{a.v} + b.v;
    if (s >= m) s -= m;
    return {static_cast<std::uint32_t>(s), m};
  }
  friend Fp operator-(Fp a, Fp b) {
    const std::uint32_t m = a.p ? a.p : b.p;
    if (m == 0) return {a.v - b.v, 0};
    return {static_cast<std::uint32_t>((std::uint64_t{a.v} + m - b.v) % m), m};
  }
  friend Fp operator-(Fp a) { return {a.v == 0 ? 0u : a.p - a.v, a.p}; }
  friend Fp operator*(Fp a, Fp b) {
    const std::uint32_t m = a.p ? a.p : b.p;
    if (m == 0) return {a.v * b.v, 0};
    return {static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % m), m};
  }
  friend Fp operator/(Fp a, Fp b);

  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }

  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend std::strong_ordering operator<=>(Fp a, Fp b) { return a.v <=> b.v; }
};

Fp inverse(Fp a);
Fp pow(Fp a, std::uint64_t e);
inline Fp operator/(Fp a, Fp b) { return a * inverse(b); }

inline bool is_zero(Fp a) { return a.v == 0; }
inline bool is_zero(const Rational& a) { return a == 0; }
Rational inverse(const Rational& a);

/// Square root with the principal-root convention: the least non-negative
/// representative for F_p (Tonelli-Shanks), the positive root for Q.
std::optional<Fp> sqrt_exact(Fp a);
std::optional<Rational> sqrt_exact(const Rational& a);

/// Textual field description: "Fp:<p>" or "QQ".
struct FieldSpec {
  enum class Kind { Prime, Rational };
  Kind kind = Kind::Rational;
  std::uint32_t p = 0;

  static FieldSpec parse(std::string_view text);
  static FieldSpec prime(std::uint32_t p);
  static FieldSpec rational() { return {}; }
  std::string to_string() const;
  bool operator==(const FieldSpec&) const = default;
};

class PrimeField {
 public:
  using Scalar = Fp;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  std::uint32_t characteristic() const { return p_; }
  Fp zero() const { return {0, p_}; }
  Fp one() const { return {1, p_}; }
  Fp from_int(std::int64_t x) const;
  Fp from_big(const BigInt& x) const;
  Fp from_ratio(const BigInt& num, const BigInt& den) const;
  std::string format(Fp x) const { return std::to_string(x.v); }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using Scalar = Rational;

  std::uint32_t characteristic() const { return 0; }
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_int(std::int64_t x) const { return Rational(x); }
  Rational from_big(const BigInt& x) const { return Rational(x); }
  Rational from_ratio(const BigInt& num, const BigInt& den) const;
  std::string format(const Rational& x) const;
  FieldSpec spec() const { return FieldSpec::rational(); }

  bool operator==(const RationalField&) const = default;
};

template <class S>
struct field_traits;

template <>
struct field_traits<Fp> {
  using field_type = PrimeField;
};

template <>
struct field_traits<Rational> {
  using field_type = RationalField;
};

template <class S>
using field_t = typename field_traits<S>::field_type;

/// Parses "a", "-a" or "a/b" into the field.
template <class F>
typename F::Scalar parse_scalar(const F& field, std::string_view text);

/// Splits "a/b" into integers; throws SyntaxError on malformed input.
void parse_ratio(std::string_view text, BigInt& num, BigInt& den);

template <class F>
typename F::Scalar parse_scalar(const F& field, std::string_view text) {
  BigInt num, den;
  parse_ratio(text, num, den);
  return field.from_ratio(num, den);
}

/// SplitMix64 generator. Every random choice in the library is drawn from an
/// explicitly seeded instance of this.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

inline Fp random_scalar(const PrimeField& field, SplitMix64& rng) {
  return {static_cast<std::uint32_t>(rng.below(field.p())), field.p()};
}

/// Small integers in [-9, 9].
inline Rational random_scalar(const RationalField&, SplitMix64& rng) {
  return Rational(static_cast<std::int64_t>(rng.below(19)) - 9);
}

}  // namespace factlab

namespace Eigen {

template <>
struct NumTraits<factlab::Fp> : GenericNumTraits<factlab::Fp> {
  using Real = factlab::Fp;
  using NonInteger = factlab::Fp;
  using Literal = factlab::Fp;
  using Nested = factlab::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4,
  };
};

}  // namespace Eigen
