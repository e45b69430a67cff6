#pragma once

// Text form of polynomials:
//   poly ::= term (('+'|'-') term)*
//   term ::= [coeff '*'] var ('^' exp)? ('*' var ('^' exp)?)*
// coeff is a decimal integer or a/b. A leading sign and a bare coefficient
// (degree 0) are also accepted. Whitespace is insignificant.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factlab/homo_poly.hpp"

namespace factlab {

/// x,y,z | x,y,z,w | x,y,z,t,u | x,y,z,w,t,v; x,y for two variables and
/// x0..x{n-1} otherwise.
std::vector<std::string> default_variable_names(int nvars);

struct RawTerm {
  BigInt num;
  BigInt den;
  std::vector<int> exponents;
};

/// Grammar-level parse: syntax and variable names only.
std::vector<RawTerm> parse_raw_terms(std::string_view text, std::span<const std::string> names);

template <class F>
HomoPoly<typename F::Scalar> parse_poly(std::string_view text, int nvars, const F& field,
                                        std::span<const std::string> names = {}) {
  std::vector<std::string> defaults;
  if (names.empty()) {
    defaults = default_variable_names(nvars);
    names = defaults;
  }
  if (static_cast<int>(names.size()) != nvars) throw Error(ErrorCode::BadParams, "variable name count differs from nvars");
  const auto raw = parse_raw_terms(text, names);
  int degree = -1;
  for (const auto& t : raw) {
    int d = 0;
    for (int e : t.exponents) d += e;
    if (degree >= 0 && d != degree) {
      throw Error(ErrorCode::NotHomogeneous,
                  "terms of degree " + std::to_string(degree) + " and " + std::to_string(d));
    }
    degree = d;
  }
  HomoPoly<typename F::Scalar> f(nvars, degree < 0 ? 0 : degree, field);
  for (const auto& t : raw) f.add_to(Monomial{t.exponents}, field.from_ratio(t.num, t.den));
  return f;
}

namespace detail {
std::string format_terms(const std::vector<std::pair<std::string, std::vector<int>>>& terms, int nvars,
                         int degree, std::span<const std::string> names);
}

inline std::string coefficient_text(const PrimeField& f, const Fp& c) { return f.format(c); }
inline std::string coefficient_text(const RationalField& f, const Rational& c) { return f.format(c); }

/// Canonical text: terms in graded-lex order, unit coefficients omitted, a
/// zero form of degree d printed as 0*x^d so the degree survives a re-parse.
template <class S>
std::string format_poly(const HomoPoly<S>& f, std::span<const std::string> names = {}) {
  std::vector<std::string> defaults;
  if (names.empty()) {
    defaults = default_variable_names(f.nvars());
    names = defaults;
  }
  std::vector<std::pair<std::string, std::vector<int>>> terms;
  for (const auto& [m, c] : f.terms()) terms.emplace_back(coefficient_text(f.field(), c), m.exponents);
  return detail::format_terms(terms, f.nvars(), f.degree(), names);
}

}  // namespace factlab
