#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "factlab/families.hpp"
#include "factlab/io.hpp"
#include "factlab/lincond.hpp"
#include "factlab/poly_text.hpp"

namespace fixtures {

using namespace factlab;

inline HomoPoly<Fp> poly(const std::string& text, int nvars, std::uint32_t p) {
  return parse_poly(text, nvars, PrimeField(p));
}

inline HomoPoly<Rational> qpoly(const std::string& text, int nvars) { return parse_poly(text, nvars, RationalField{}); }

inline ProjPoint<Fp> pt(std::vector<std::int64_t> c, std::uint32_t p) {
  const PrimeField f(p);
  std::vector<Fp> v;
  for (auto x : c) v.push_back(f.from_int(x));
  return ProjPoint<Fp>::from_coords(std::move(v));
}

inline ProjPoint<Rational> qpt(std::vector<Rational> c) { return ProjPoint<Rational>::from_coords(std::move(c)); }

inline PointSet<Fp> pset(int n, std::uint32_t p, const std::vector<std::vector<std::int64_t>>& pts) {
  PointSet<Fp> s(n, PrimeField(p));
  for (const auto& c : pts) s.add(pt(c, p));
  return s;
}

/// The r = 2 and r = 3 double-solid fixtures over F_101 (seed 1).
inline const FamilyInstance& double_solid(int r) {
  static const FamilyInstance r2 = [] {
    FamilySpec s;
    s.r = 2;
    return generate(s);
  }();
  static const FamilyInstance r3 = [] {
    FamilySpec s;
    s.r = 3;
    return generate(s);
  }();
  return r == 2 ? r2 : r3;
}

inline const HomoPoly<Fp>& part(const FamilyInstance& fam, const std::string& name) {
  for (const auto& [n, f] : fam.parts)
    if (n == name) return f;
  throw std::out_of_range("no part " + name);
}

// Oracles. Plain modular arithmetic on integer vectors, no library algebra.

using Row = std::vector<std::uint64_t>;

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

/// Rank by textbook elimination, column by column.
inline std::size_t oracle_rank(std::vector<Row> m, std::uint64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t sel = rank;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[rank]);
    const std::uint64_t inv = powmod(m[rank][c], p - 2, p);
    for (auto& x : m[rank]) x = x * inv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const std::uint64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

/// Exponent vectors of degree d in k variables, any order.
inline std::vector<std::vector<int>> exponents(int k, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[static_cast<std::size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, d);
  return out;
}

inline Row monomial_row(const std::vector<std::uint64_t>& x, const std::vector<std::vector<int>>& exps, std::uint64_t p) {
  Row r;
  for (const auto& e : exps) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < x.size(); ++i) v = v * powmod(x[i], static_cast<std::uint64_t>(e[i]), p) % p;
    r.push_back(v);
  }
  return r;
}

inline std::vector<std::uint64_t> raw(const ProjPoint<Fp>& q) {
  std::vector<std::uint64_t> v;
  for (const auto& c : q.coords()) v.push_back(c.v);
  return v;
}

/// Every point of P^n(F_p), by normalizing all nonzero vectors.
inline std::vector<std::vector<std::uint64_t>> all_points(int n, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> v(static_cast<std::size_t>(n + 1), 0);
  std::uint64_t total = 1;
  for (int i = 0; i <= n; ++i) total *= p;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = n; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = c % p;
      c /= p;
    }
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] == 1) out.push_back(v);
  }
  return out;
}

/// For each point of sigma, whether some nonzero form of degree xi vanishes
/// on the others and not there. Every form of P(S_xi) is tried.
inline std::vector<bool> brute_separable(const std::vector<std::vector<std::uint64_t>>& sigma, int xi, std::uint64_t p) {
  if (sigma.empty()) return {};
  const auto exps = exponents(static_cast<int>(sigma[0].size()), xi);
  std::vector<Row> rows;
  for (const auto& x : sigma) rows.push_back(monomial_row(x, exps, p));
  const std::size_t n = sigma.size();
  std::vector<bool> found(n, false);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (const auto& c : all_points(static_cast<int>(exps.size()) - 1, p)) {
    std::uint64_t zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t v = 0;
      for (std::size_t j = 0; j < c.size(); ++j) v = (v + c[j] * rows[i][j]) % p;
      if (v == 0) zeros |= std::uint64_t{1} << i;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (zeros == (full & ~(std::uint64_t{1} << i))) found[i] = true;
  }
  return found;
}

/// Random form of the given degree vanishing on sigma; nullopt when only the
/// zero form does.
inline std::optional<HomoPoly<Fp>> random_form_vanishing_on(const PointSet<Fp>& sigma, int degree, SplitMix64& rng) {
  const auto& field = sigma.field();
  const auto m = evaluation_matrix(sigma, degree);
  const auto ker = nullspace(m.entries, field);
  if (ker.cols() == 0) return std::nullopt;
  Vector<Fp> c = zero_vector<Fp>(ker.rows(), field);
  for (Index j = 0; j < ker.cols(); ++j) c += random_scalar(field, rng) * ker.col(j);
  return HomoPoly<Fp>(sigma.ambient_dim() + 1, degree, field, std::vector<Fp>(c.data(), c.data() + c.size()));
}

struct SwapFixture {
  PointSet<Fp> lambda;
  std::vector<SeparatorCertificate<Fp>> seps_lambda;
  PointSet<Fp> delta;
  std::vector<SeparatorCertificate<Fp>> seps_delta;
  HomoPoly<Fp> g;
};

/// Lambda = the r = 2 nodes with cubic separators, Delta = two seeded points
/// with linear separators, G a seeded quadric through Lambda missing Delta.
inline SwapFixture swap_fixture(std::uint64_t seed) {
  const auto& lambda = double_solid(2).instance.sing;
  const PrimeField field(101);
  for (std::uint64_t s = seed;; ++s) {
    SplitMix64 rng(s);
    PointSet<Fp> delta(3, field);
    while (delta.size() < 2) {
      const auto q = random_point(3, field, rng);
      if (!lambda.contains(q)) delta.insert(q);
    }
    const auto g = random_form_vanishing_on(lambda, 2, rng);
    if (!g) continue;
    bool misses = true;
    for (const auto& q : delta) misses = misses && !is_zero(eval(*g, q.coords()));
    if (!misses) continue;
    return {lambda, *all_separators(lambda, 3), delta, *all_separators(delta, 1), *g};
  }
}

}  // namespace fixtures
