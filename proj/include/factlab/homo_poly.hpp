#pragma once

// Dense homogeneous polynomials over an exact field.
//
// A HomoPoly stores one coefficient per monomial of its degree, in the order
// of monomial_basis(nvars, degree). Zero coefficients are simply zero
// entries; terms() lists the nonzero ones.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "factlab/error.hpp"
#include "factlab/field.hpp"
#include "factlab/linalg.hpp"
#include "factlab/monomial.hpp"

namespace factlab {

template <class S>
class HomoPoly {
 public:
  using Scalar = S;
  using Field = field_t<S>;

  HomoPoly(int nvars, int degree, Field field)
      : nvars_(nvars), degree_(degree), field_(std::move(field)) {
    if (nvars < 1 || degree < 0) throw Error(ErrorCode::BadParams, "HomoPoly needs nvars >= 1, degree >= 0");
    coeffs_.assign(basis_size(nvars, degree), field_.zero());
  }

  HomoPoly(int nvars, int degree, Field field, std::vector<S> coeffs)
      : nvars_(nvars), degree_(degree), field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_size(nvars, degree)) {
      throw Error(ErrorCode::BadParams, "coefficient vector does not match the monomial basis");
    }
  }

  static HomoPoly variable(int nvars, int index, const Field& field) {
    HomoPoly f(nvars, 1, field);
    f.coeffs_[static_cast<std::size_t>(index)] = field.one();
    return f;
  }

  static HomoPoly constant(int nvars, const S& c, const Field& field) {
    return HomoPoly(nvars, 0, field, {c});
  }

  /// Linear form sum c_i x_i.
  static HomoPoly linear(std::span<const S> c, const Field& field) {
    return HomoPoly(static_cast<int>(c.size()), 1, field, std::vector<S>(c.begin(), c.end()));
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const Field& field() const { return field_; }

  std::span<const S> coefficients() const { return coeffs_; }
  const S& coeff(std::size_t index) const { return coeffs_[index]; }
  S coeff(const Monomial& m) const { return coeffs_[monomial_index(m.exponents)]; }
  void set_coeff(const Monomial& m, const S& c) { coeffs_[monomial_index(m.exponents)] = c; }
  void add_to(const Monomial& m, const S& c) { coeffs_[monomial_index(m.exponents)] += c; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const S& c) { return factlab::is_zero(c); });
  }

  std::size_t term_count() const {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const S& c) { return !factlab::is_zero(c); }));
  }

  /// Nonzero terms, largest monomial first.
  std::vector<std::pair<Monomial, S>> terms() const {
    std::vector<std::pair<Monomial, S>> out;
    const auto basis = monomial_basis(nvars_, degree_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!factlab::is_zero(coeffs_[i])) out.emplace_back(basis[i], coeffs_[i]);
    }
    return out;
  }

  /// Index of the leading (largest nonzero) monomial, if any.
  std::optional<std::size_t> leading_index() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!factlab::is_zero(coeffs_[i])) return i;
    return std::nullopt;
  }

  HomoPoly& operator+=(const HomoPoly& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  HomoPoly& operator-=(const HomoPoly& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  HomoPoly& operator*=(const S& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend HomoPoly operator+(HomoPoly a, const HomoPoly& b) { return a += b; }
  friend HomoPoly operator-(HomoPoly a, const HomoPoly& b) { return a -= b; }
  friend HomoPoly operator-(HomoPoly a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend HomoPoly operator*(const S& c, HomoPoly a) { return a *= c; }
  friend HomoPoly operator*(HomoPoly a, const S& c) { return a *= c; }

  friend HomoPoly operator*(const HomoPoly& a, const HomoPoly& b) {
    if (a.nvars_ != b.nvars_) throw Error(ErrorCode::BadParams, "product of polynomials in different rings");
    HomoPoly out(a.nvars_, a.degree_ + b.degree_, a.field_);
    const auto ba = monomial_basis(a.nvars_, a.degree_);
    const auto bb = monomial_basis(b.nvars_, b.degree_);
    std::vector<int> e(static_cast<std::size_t>(a.nvars_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (factlab::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (factlab::is_zero(b.coeffs_[j])) continue;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ba[i].exponents[k] + bb[j].exponents[k];
        out.coeffs_[monomial_index(e)] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }

  friend bool operator==(const HomoPoly& a, const HomoPoly& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_same_shape(const HomoPoly& o) const {
    if (o.nvars_ != nvars_ || o.degree_ != degree_) {
      throw Error(ErrorCode::DegreeMismatch, "sum of polynomials of different shape");
    }
  }

  int nvars_;
  int degree_;
  Field field_;
  std::vector<S> coeffs_;
};

inline bool in_field(const PrimeField& f, const Fp& x) { return x.p == f.p() || (x.p == 0 && x.v == 0); }
inline bool in_field(const RationalField&, const Rational&) { return true; }

/// Table pw[i][e] = coords[i]^e for e <= degree.
template <class S>
std::vector<std::vector<S>> power_table(std::span<const S> coords, int degree, const field_t<S>& field) {
  std::vector<std::vector<S>> pw(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    pw[i].resize(static_cast<std::size_t>(degree) + 1);
    pw[i][0] = field.one();
    for (int e = 1; e <= degree; ++e) pw[i][static_cast<std::size_t>(e)] = pw[i][static_cast<std::size_t>(e - 1)] * coords[i];
  }
  return pw;
}

/// Value of f at a coordinate vector, by direct monomial summation.
template <class S>
S eval(const HomoPoly<S>& f, std::span<const S> coords) {
  if (static_cast<int>(coords.size()) != f.nvars()) {
    throw Error(ErrorCode::FieldMismatch, "coordinate count does not match the number of variables");
  }
  for (const auto& c : coords) {
    if (!in_field(f.field(), c)) throw Error(ErrorCode::FieldMismatch, "coordinate from a different field");
  }
  const auto pw = power_table(coords, f.degree(), f.field());
  const auto basis = monomial_basis(f.nvars(), f.degree());
  S acc = f.field().zero();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const S& c = f.coeff(i);
    if (is_zero(c)) continue;
    S term = c;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const int e = basis[i].exponents[k];
      if (e) term *= pw[k][static_cast<std::size_t>(e)];
    }
    acc += term;
  }
  return acc;
}

template <class S>
S eval(const HomoPoly<S>& f, const std::vector<S>& coords) {
  return eval(f, std::span<const S>(coords));
}

/// Partial derivative with respect to variable `var`.
template <class S>
HomoPoly<S> partial(const HomoPoly<S>& f, int var) {
  if (f.degree() < 1) throw Error(ErrorCode::BadParams, "derivative of a constant form");
  HomoPoly<S> out(f.nvars(), f.degree() - 1, f.field());
  for (auto [m, c] : f.terms()) {
    const int e = m.exponents[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    m.exponents[static_cast<std::size_t>(var)] = e - 1;
    out.add_to(m, c * f.field().from_int(e));
  }
  return out;
}

template <class S>
std::vector<HomoPoly<S>> gradient(const HomoPoly<S>& f) {
  std::vector<HomoPoly<S>> out;
  out.reserve(static_cast<std::size_t>(f.nvars()));
  for (int i = 0; i < f.nvars(); ++i) out.push_back(partial(f, i));
  return out;
}

template <class S>
Vector<S> gradient_at(const HomoPoly<S>& f, std::span<const S> coords) {
  Vector<S> g(f.nvars());
  for (int i = 0; i < f.nvars(); ++i) g(i) = eval(partial(f, i), coords);
  return g;
}

/// Matrix of homogeneous second partials at a point.
template <class S>
Matrix<S> second_partials_at(const HomoPoly<S>& f, std::span<const S> coords) {
  const int n = f.nvars();
  Matrix<S> h = zero_matrix<S>(n, n, f.field());
  if (f.degree() < 2) return h;
  for (int i = 0; i < n; ++i) {
    const HomoPoly<S> fi = partial(f, i);
    for (int j = i; j < n; ++j) {
      const S v = eval(partial(fi, j), coords);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

inline void require_second_order_characteristic(std::uint32_t characteristic, int degree) {
  if (characteristic != 0 && (characteristic == 2 || characteristic <= static_cast<std::uint32_t>(degree))) {
    throw Error(ErrorCode::CharTooSmall, "characteristic " + std::to_string(characteristic) +
                                             " too small for degree " + std::to_string(degree));
  }
}

template <class S>
std::size_t first_nonzero(std::span<const S> coords) {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!is_zero(coords[i])) return i;
  throw Error(ErrorCode::ZeroVector, "all coordinates are zero");
}

/// Matrix with row/column `skip` removed.
template <class S>
Matrix<S> drop_index(const Matrix<S>& h, Index skip) {
  const Index n = h.rows();
  Matrix<S> out(n - 1, n - 1);
  for (Index i = 0, r = 0; i < n; ++i) {
    if (i == skip) continue;
    for (Index j = 0, c = 0; j < n; ++j) {
      if (j == skip) continue;
      out(r, c++) = h(i, j);
    }
    ++r;
  }
  return out;
}

/// Rank of the affine Hessian at a singular point, in the chart where the
/// first nonzero coordinate of the point is 1. Full rank (nvars - 1) means an
/// ordinary double point.
template <class S>
std::size_t hessian_rank_at(const HomoPoly<S>& f, std::span<const S> coords) {
  require_second_order_characteristic(f.field().characteristic(), f.degree());
  if (f.degree() < 2) throw Error(ErrorCode::NotSingular, "linear forms have no singular points");
  if (!all_zero(gradient_at(f, coords)) || !is_zero(eval(f, coords))) {
    throw Error(ErrorCode::NotSingular, "gradient does not vanish at the point");
  }
  const std::size_t pivot = first_nonzero(coords);
  return rank(drop_index(second_partials_at(f, coords), static_cast<Index>(pivot)));
}

/// f(images[0], ..., images[n-1]) for forms `images` of a common degree.
template <class S>
HomoPoly<S> substitute(const HomoPoly<S>& f, const std::vector<HomoPoly<S>>& images) {
  if (static_cast<int>(images.size()) != f.nvars() || images.empty()) {
    throw Error(ErrorCode::BadParams, "substitution needs one image per variable");
  }
  const int m = images.front().nvars();
  const int e = images.front().degree();
  for (const auto& g : images) {
    if (g.nvars() != m || g.degree() != e) throw Error(ErrorCode::BadParams, "substitution images differ in shape");
  }
  const auto& field = f.field();
  std::vector<std::vector<HomoPoly<S>>> pw(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    pw[i].push_back(HomoPoly<S>::constant(m, field.one(), field));
    for (int k = 1; k <= f.degree(); ++k) pw[i].push_back(pw[i].back() * images[i]);
  }
  HomoPoly<S> out(m, f.degree() * e, field);
  for (const auto& [mono, c] : f.terms()) {
    HomoPoly<S> term = HomoPoly<S>::constant(m, c, field);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const int k = mono.exponents[i];
      if (k) term = term * pw[i][static_cast<std::size_t>(k)];
    }
    out += term;
  }
  return out;
}

/// f(M x): the linear change of coordinates x_i -> sum_j M(i, j) x_j.
template <class S>
HomoPoly<S> linear_change(const HomoPoly<S>& f, const Matrix<S>& m) {
  std::vector<HomoPoly<S>> images;
  for (Index i = 0; i < m.rows(); ++i) {
    std::vector<S> row(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
    images.push_back(HomoPoly<S>::linear(row, f.field()));
  }
  return substitute(f, images);
}

/// Re-reads f in a ring with `new_nvars` variables, variable i going to
/// position positions[i].
template <class S>
HomoPoly<S> embed(const HomoPoly<S>& f, int new_nvars, std::span<const int> positions) {
  HomoPoly<S> out(new_nvars, f.degree(), f.field());
  for (const auto& [m, c] : f.terms()) {
    Monomial e{std::vector<int>(static_cast<std::size_t>(new_nvars), 0)};
    for (std::size_t i = 0; i < positions.size(); ++i) e.exponents[static_cast<std::size_t>(positions[i])] += m.exponents[i];
    out.add_to(e, c);
  }
  return out;
}

/// Restriction of f to the hyperplane l = 0, eliminating variable `chart`
/// through l = 0. The remaining variables keep their relative order.
template <class S>
HomoPoly<S> restrict_to_plane(const HomoPoly<S>& f, const HomoPoly<S>& l, int chart) {
  if (l.degree() != 1 || l.nvars() != f.nvars()) throw Error(ErrorCode::BadParams, "plane must be a linear form");
  const S pivot = l.coeff(static_cast<std::size_t>(chart));
  if (is_zero(pivot)) throw Error(ErrorCode::BadChart, "linear form has zero coefficient at the chart variable");
  const int n = f.nvars();
  const auto& field = f.field();
  const S scale = -inverse(pivot);
  std::vector<HomoPoly<S>> images;
  std::vector<S> chart_image;
  for (int j = 0; j < n; ++j) {
    if (j != chart) chart_image.push_back(scale * l.coeff(static_cast<std::size_t>(j)));
  }
  for (int j = 0, k = 0; j < n; ++j) {
    if (j == chart) {
      images.push_back(HomoPoly<S>::linear(chart_image, field));
    } else {
      images.push_back(HomoPoly<S>::variable(n - 1, k++, field));
    }
  }
  return substitute(f, images);
}

enum class SqrtFailure { None, OddDegree, CharTwo, LeadingCoeffNotSquare, NotSquare };

template <class S>
struct SqrtResult {
  std::optional<HomoPoly<S>> root;
  SqrtFailure reason = SqrtFailure::None;
};

/// Square root by coefficient matching from the leading term down. The root's
/// leading coefficient is the principal square root of f's.
template <class S>
SqrtResult<S> poly_sqrt(const HomoPoly<S>& f) {
  if (f.degree() % 2 != 0) return {std::nullopt, SqrtFailure::OddDegree};
  if (f.field().characteristic() == 2) return {std::nullopt, SqrtFailure::CharTwo};
  const int n = f.nvars();
  const int half = f.degree() / 2;
  const auto& field = f.field();
  HomoPoly<S> root(n, half, field);
  const auto lead = f.leading_index();
  if (!lead) return {root, SqrtFailure::None};

  const auto fbasis = monomial_basis(n, f.degree());
  const Monomial& m = fbasis[*lead];
  Monomial m0{m.exponents};
  for (auto& e : m0.exponents) {
    if (e % 2) return {std::nullopt, SqrtFailure::NotSquare};
    e /= 2;
  }
  const auto c0 = sqrt_exact(f.coeff(*lead));
  if (!c0) return {std::nullopt, SqrtFailure::LeadingCoeffNotSquare};
  root.set_coeff(m0, *c0);
  const S twice_c0 = *c0 + *c0;
  HomoPoly<S> rest = f - root * root;

  const std::size_t max_terms = basis_size(n, half);
  for (std::size_t step = 1; step <= max_terms; ++step) {
    const auto li = rest.leading_index();
    if (!li) return {root, SqrtFailure::None};
    const Monomial& ml = fbasis[*li];
    Monomial mt{ml.exponents};
    for (std::size_t k = 0; k < mt.exponents.size(); ++k) {
      mt.exponents[k] -= m0.exponents[k];
      if (mt.exponents[k] < 0) return {std::nullopt, SqrtFailure::NotSquare};
    }
    if (!(mt < m0)) return {std::nullopt, SqrtFailure::NotSquare};
    HomoPoly<S> t(n, half, field);
    t.set_coeff(mt, rest.coeff(*li) / twice_c0);
    rest -= (root + root) * t + t * t;
    root += t;
  }
  if (rest.is_zero()) return {root, SqrtFailure::None};
  return {std::nullopt, SqrtFailure::NotSquare};
}

/// Exact quotient f / l, or nullopt when l does not divide f.
template <class S>
std::optional<HomoPoly<S>> divide_by_linear(const HomoPoly<S>& f, const HomoPoly<S>& l) {
  if (l.degree() != 1 || l.nvars() != f.nvars()) throw Error(ErrorCode::BadParams, "divisor must be a linear form");
  const auto lead = l.leading_index();
  if (!lead) throw Error(ErrorCode::BadParams, "division by the zero form");
  if (f.degree() < 1) return std::nullopt;
  const int n = f.nvars();
  const std::size_t var = *lead;  // degree-1 basis index == variable index
  const S inv = inverse(l.coeff(var));
  const auto fbasis = monomial_basis(n, f.degree());
  HomoPoly<S> q(n, f.degree() - 1, f.field());
  HomoPoly<S> rest = f;
  for (std::size_t step = 0; step <= fbasis.size(); ++step) {
    const auto li = rest.leading_index();
    if (!li) return q;
    Monomial mt{fbasis[*li].exponents};
    if (mt.exponents[var] == 0) return std::nullopt;
    mt.exponents[var] -= 1;
    HomoPoly<S> t(n, f.degree() - 1, f.field());
    t.set_coeff(mt, rest.coeff(*li) * inv);
    rest -= t * l;
    q += t;
  }
  return std::nullopt;
}

/// Seeded random form: one draw per monomial, in basis order.
template <class F>
HomoPoly<typename F::Scalar> random_homo(int nvars, int degree, const F& field, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<typename F::Scalar> c(basis_size(nvars, degree));
  for (auto& x : c) x = random_scalar(field, rng);
  return HomoPoly<typename F::Scalar>(nvars, degree, field, std::move(c));
}

}  // namespace factlab
