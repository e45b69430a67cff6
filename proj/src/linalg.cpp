#include "factlab/linalg.hpp"

#include <utility>

namespace factlab {

RankProfile rank_profile(const Matrix<Fp>& a) {
  RankProfile out;
  RowSpace<Fp> space(a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    if (space.insert(a.row(i).transpose())) {
      out.independent_rows.push_back(static_cast<std::size_t>(i));
    } else {
      out.dependent_rows.push_back(static_cast<std::size_t>(i));
    }
  }
  out.rank = space.rank();
  return out;
}

RankProfile rank_profile(const Matrix<Rational>& a) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;

  // t is a^T with every original row cleared of denominators.
  const std::size_t rows = static_cast<std::size_t>(a.cols());
  const std::size_t cols = static_cast<std::size_t>(a.rows());
  std::vector<BigInt> t(rows * cols);
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return t[i * cols + j]; };
  for (std::size_t j = 0; j < cols; ++j) {
    BigInt scale = 1;
    for (std::size_t i = 0; i < rows; ++i) {
      scale = lcm(scale, BigInt(denominator(a(static_cast<Index>(j), static_cast<Index>(i)))));
    }
    for (std::size_t i = 0; i < rows; ++i) {
      const Rational& x = a(static_cast<Index>(j), static_cast<Index>(i));
      at(i, j) = BigInt(numerator(x)) * (scale / BigInt(denominator(x)));
    }
  }

  RankProfile out;
  BigInt prev = 1;
  std::size_t pivot_row = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    std::size_t sel = rows;
    for (std::size_t i = pivot_row; i < rows; ++i) {
      if (at(i, j) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows) {
      out.dependent_rows.push_back(j);
      continue;
    }
    if (sel != pivot_row) {
      for (std::size_t l = 0; l < cols; ++l) std::swap(at(sel, l), at(pivot_row, l));
    }
    const BigInt pivot = at(pivot_row, j);
    for (std::size_t i = pivot_row + 1; i < rows; ++i) {
      const BigInt lead = at(i, j);
      for (std::size_t l = j + 1; l < cols; ++l) {
        at(i, l) = (pivot * at(i, l) - lead * at(pivot_row, l)) / prev;
      }
      at(i, j) = 0;
    }
    prev = pivot;
    ++pivot_row;
    out.independent_rows.push_back(j);
  }
  out.rank = out.independent_rows.size();
  return out;
}

}  // namespace factlab
