#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace factlab {

struct Monomial {
  std::vector<int> exponents;

  int nvars() const { return static_cast<int>(exponents.size()); }
  int degree() const;

  auto operator<=>(const Monomial&) const = default;
};

/// Exact binomial coefficient C(n, k); zero outside 0 <= k <= n.
std::size_t binomial(int n, int k);

/// Number of monomials of total degree `degree` in `nvars` variables.
std::size_t basis_size(int nvars, int degree);

/// All monomials of the given degree in graded-lex order, largest first:
/// x^d, x^(d-1)y, ..., i.e. lexicographically descending exponent vectors.
std::vector<Monomial> monomial_basis(int nvars, int degree);

/// Position of an exponent vector inside monomial_basis(size, sum).
std::size_t monomial_index(std::span<const int> exponents);

}  // namespace factlab
