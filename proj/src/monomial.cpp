#include "factlab/monomial.hpp"

#include <numeric>
#include <stdexcept>

namespace factlab {

int Monomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t basis_size(int nvars, int degree) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  return binomial(degree + nvars - 1, nvars - 1);
}

namespace {

void fill(std::vector<Monomial>& out, std::vector<int>& cur, int pos, int remaining) {
  const int n = static_cast<int>(cur.size());
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(Monomial{cur});
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill(out, cur, pos + 1, remaining - e);
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(int nvars, int degree) {
  if (nvars < 1 || degree < 0) throw std::invalid_argument("monomial_basis: nvars >= 1, degree >= 0");
  std::vector<Monomial> out;
  out.reserve(basis_size(nvars, degree));
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  fill(out, cur, 0, degree);
  return out;
}

std::size_t monomial_index(std::span<const int> exponents) {
  const int n = static_cast<int>(exponents.size());
  int remaining = std::accumulate(exponents.begin(), exponents.end(), 0);
  std::size_t index = 0;
  for (int i = 0; i + 1 < n; ++i) {
    for (int v = remaining; v > exponents[static_cast<std::size_t>(i)]; --v) {
      index += basis_size(n - i - 1, remaining - v);
    }
    remaining -= exponents[static_cast<std::size_t>(i)];
  }
  return index;
}

}  // namespace factlab
