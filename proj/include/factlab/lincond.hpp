#pragma once

// Linear conditions imposed by finite point sets on forms of degree xi:
// evaluation matrices, the defect h^1(I_Sigma(xi)) = |Sigma| - rank,
// separators, the swapping combiner, curve incidence counts and the
// base-point test for plane blow-ups.

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "factlab/homo_poly.hpp"
#include "factlab/parallel.hpp"
#include "factlab/projgeom.hpp"

namespace factlab {

/// Evaluation at `point`, or the derivative d/dt at t = 0 along
/// point + t * direction when a direction is given.
template <class S>
struct Functional {
  ProjPoint<S> point;
  std::optional<std::vector<S>> direction;
};

template <class S>
Vector<S> monomial_values(std::span<const S> coords, const std::vector<Monomial>& basis, int degree,
                          const field_t<S>& field) {
  const auto pw = power_table(coords, degree, field);
  Vector<S> row(static_cast<Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    S v = field.one();
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const int e = basis[j].exponents[k];
      if (e) v *= pw[k][static_cast<std::size_t>(e)];
    }
    row(static_cast<Index>(j)) = v;
  }
  return row;
}

template <class S>
Vector<S> directional_values(std::span<const S> coords, std::span<const S> direction, const std::vector<Monomial>& basis,
                             int degree, const field_t<S>& field) {
  const auto pw = power_table(coords, degree, field);
  Vector<S> row = zero_vector<S>(static_cast<Index>(basis.size()), field);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& e = basis[j].exponents;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (e[k] == 0 || is_zero(direction[k])) continue;
      S term = field.from_int(e[k]) * direction[k];
      for (std::size_t i = 0; i < coords.size(); ++i) {
        const int x = e[i] - (i == k ? 1 : 0);
        if (x) term *= pw[i][static_cast<std::size_t>(x)];
      }
      row(static_cast<Index>(j)) += term;
    }
  }
  return row;
}

template <class S>
Vector<S> functional_row(const Functional<S>& fn, const std::vector<Monomial>& basis, int degree, const field_t<S>& field) {
  if (!fn.direction) return monomial_values(fn.point.coords(), basis, degree, field);
  return directional_values(fn.point.coords(), std::span<const S>(*fn.direction), basis, degree, field);
}

template <class S>
struct EvalMatrix {
  std::vector<Functional<S>> rows;
  std::vector<Monomial> cols;
  int xi = 0;
  Matrix<S> entries;
};

/// One row per point of sigma, then one per (point, direction) pair.
template <class S>
EvalMatrix<S> evaluation_matrix(const PointSet<S>& sigma, int xi,
                                const std::vector<std::pair<ProjPoint<S>, std::vector<S>>>& extra = {},
                                unsigned threads = 1) {
  if (xi < 0) throw Error(ErrorCode::BadParams, "xi must be >= 0");
  const auto& field = sigma.field();
  EvalMatrix<S> m;
  m.xi = xi;
  m.cols = monomial_basis(sigma.ambient_dim() + 1, xi);
  for (const auto& p : sigma) m.rows.push_back({p, std::nullopt});
  for (const auto& [p, v] : extra) {
    if (static_cast<int>(v.size()) != sigma.ambient_dim() + 1 || p.ambient_dim() != sigma.ambient_dim()) {
      throw Error(ErrorCode::WrongAmbient, "direction of the wrong length");
    }
    bool independent = false;
    for (std::size_t i = 0; i < v.size() && !independent; ++i)
      for (std::size_t j = i + 1; j < v.size() && !independent; ++j)
        independent = !is_zero(p[i] * v[j] - p[j] * v[i]);
    if (!independent) throw Error(ErrorCode::BadParams, "direction is proportional to the point");
    m.rows.push_back({p, v});
  }
  m.entries = zero_matrix<S>(static_cast<Index>(m.rows.size()), static_cast<Index>(m.cols.size()), field);
  parallel_chunks(m.rows.size(), threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i)
      m.entries.row(static_cast<Index>(i)) = functional_row(m.rows[i], m.cols, xi, field).transpose();
    return 0;
  });
  return m;
}

template <class S>
struct DefectReport {
  std::size_t size = 0;
  std::size_t rank = 0;
  std::size_t defect = 0;
  int xi = 0;
  std::vector<std::size_t> dependent_indices;
  std::vector<ProjPoint<S>> dependent_points;
};

template <class S>
DefectReport<S> defect(const PointSet<S>& sigma, int xi, unsigned threads = 1) {
  const EvalMatrix<S> m = evaluation_matrix(sigma, xi, {}, threads);
  const RankProfile rp = rank_profile(m.entries);
  DefectReport<S> r;
  r.size = sigma.size();
  r.rank = rp.rank;
  r.defect = r.size - r.rank;
  r.xi = xi;
  r.dependent_indices = rp.dependent_rows;
  for (std::size_t i : rp.dependent_rows) r.dependent_points.push_back(sigma[i]);
  return r;
}

template <class S>
bool is_independent(const PointSet<S>& sigma, int xi) {
  return defect(sigma, xi).defect == 0;
}

/// A form of degree xi vanishing on sigma minus `point` and not at `point`.
/// Both evaluations are checked when the certificate is made.
template <class S>
class SeparatorCertificate {
 public:
  static SeparatorCertificate make(const PointSet<S>& sigma, const ProjPoint<S>& point, HomoPoly<S> form) {
    if (!sigma.contains(point)) throw Error(ErrorCode::NotInSet, "certificate point is not in the set");
    if (form.nvars() != sigma.ambient_dim() + 1) throw Error(ErrorCode::WrongAmbient, "form has the wrong number of variables");
    for (const auto& q : sigma) {
      const bool vanishes = is_zero(eval(form, q.coords()));
      if (q == point ? vanishes : !vanishes) {
        throw Error(ErrorCode::BadCertificate, q == point ? "separator vanishes at its point"
                                                          : "separator does not vanish on the other points");
      }
    }
    return SeparatorCertificate(point, std::move(form));
  }

  const ProjPoint<S>& point() const { return point_; }
  const HomoPoly<S>& form() const { return form_; }
  int degree() const { return form_.degree(); }

 private:
  SeparatorCertificate(ProjPoint<S> p, HomoPoly<S> f) : point_(std::move(p)), form_(std::move(f)) {}

  ProjPoint<S> point_;
  HomoPoly<S> form_;
};

/// Proof that no separator exists: the row of `point` equals
/// sum coefficient * row(sigma[index]) over the other points.
template <class S>
struct SeparationFailure {
  ProjPoint<S> point;
  std::size_t index;
  std::vector<std::pair<std::size_t, S>> combination;
};

template <class S>
using SeparatorResult = std::variant<SeparatorCertificate<S>, SeparationFailure<S>>;

template <class S>
SeparatorResult<S> separator(const PointSet<S>& sigma, const ProjPoint<S>& point, int xi) {
  const auto at = sigma.index_of(point);
  if (!at) throw Error(ErrorCode::NotInSet, "point is not in the set");
  const auto& field = sigma.field();
  const auto basis = monomial_basis(sigma.ambient_dim() + 1, xi);
  const Index cols = static_cast<Index>(basis.size());
  Matrix<S> others(static_cast<Index>(sigma.size() - 1), cols);
  std::vector<std::size_t> other_index;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i == *at) continue;
    others.row(static_cast<Index>(other_index.size())) = monomial_values(sigma[i].coords(), basis, xi, field).transpose();
    other_index.push_back(i);
  }
  const Vector<S> target = monomial_values(point.coords(), basis, xi, field);
  const Matrix<S> kernel = nullspace(others, field);
  for (Index c = 0; c < kernel.cols(); ++c) {
    if (is_zero(target.dot(kernel.col(c)))) continue;
    std::vector<S> coeffs(kernel.col(c).data(), kernel.col(c).data() + cols);
    HomoPoly<S> form(sigma.ambient_dim() + 1, xi, field, std::move(coeffs));
    return SeparatorCertificate<S>::make(sigma, point, std::move(form));
  }
  Matrix<S> others_t = others.transpose();
  const auto c = solve(others_t, target, field);
  if (!c) throw std::logic_error("separator: no kernel vector and no row combination");
  SeparationFailure<S> fail{point, *at, {}};
  for (std::size_t k = 0; k < other_index.size(); ++k) {
    if (!is_zero((*c)(static_cast<Index>(k)))) fail.combination.emplace_back(other_index[k], (*c)(static_cast<Index>(k)));
  }
  return fail;
}

/// Separators for every point, or nullopt when one is missing.
template <class S>
std::optional<std::vector<SeparatorCertificate<S>>> all_separators(const PointSet<S>& sigma, int xi) {
  std::vector<SeparatorCertificate<S>> out;
  for (const auto& p : sigma) {
    auto r = separator(sigma, p, xi);
    if (auto* cert = std::get_if<SeparatorCertificate<S>>(&r)) {
      out.push_back(std::move(*cert));
    } else {
      return std::nullopt;
    }
  }
  return out;
}

/// Separators for the union of lambda and delta at degree xi, built from
/// separators of lambda at degree xi, separators of delta at degree
/// xi - deg g, and a form g vanishing on lambda and nowhere on delta.
/// Output order: lambda's points, then delta's.
template <class S>
std::vector<SeparatorCertificate<S>> swap_combine(const PointSet<S>& lambda,
                                                  const std::vector<SeparatorCertificate<S>>& seps_lambda,
                                                  const PointSet<S>& delta,
                                                  const std::vector<SeparatorCertificate<S>>& seps_delta,
                                                  const HomoPoly<S>& g, int xi) {
  const int zeta = g.degree();
  if (zeta > xi) throw Error(ErrorCode::DegreeMismatch, "deg G exceeds xi");
  if (seps_lambda.size() != lambda.size() || seps_delta.size() != delta.size()) {
    throw Error(ErrorCode::TooFew, "need one separator per point");
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(seps_lambda[i].point() == lambda[i])) throw Error(ErrorCode::BadCertificate, "separators out of order for Lambda");
    if (seps_lambda[i].degree() != xi) throw Error(ErrorCode::DegreeMismatch, "Lambda separator of the wrong degree");
  }
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (!(seps_delta[i].point() == delta[i])) throw Error(ErrorCode::BadCertificate, "separators out of order for Delta");
    if (seps_delta[i].degree() != xi - zeta) throw Error(ErrorCode::DegreeMismatch, "Delta separator of the wrong degree");
  }
  PointSet<S> both = lambda;
  for (const auto& q : delta) {
    if (lambda.contains(q)) throw Error(ErrorCode::Overlap, "Lambda and Delta share a point");
    both.add(q);
  }
  for (const auto& q : lambda)
    if (!is_zero(eval(g, q.coords()))) throw Error(ErrorCode::GMissesLambda, "G does not vanish on Lambda");
  for (const auto& q : delta)
    if (is_zero(eval(g, q.coords()))) throw Error(ErrorCode::GVanishesOnDelta, "G vanishes at a point of Delta");

  std::vector<HomoPoly<S>> lifted;
  for (const auto& s : seps_delta) lifted.push_back(g * s.form());
  std::vector<SeparatorCertificate<S>> out;
  for (const auto& s : seps_lambda) {
    HomoPoly<S> f = s.form();
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const S mu = -eval(f, delta[i].coords()) / eval(lifted[i], delta[i].coords());
      f += mu * lifted[i];
    }
    out.push_back(SeparatorCertificate<S>::make(both, s.point(), std::move(f)));
  }
  for (std::size_t i = 0; i < delta.size(); ++i) {
    out.push_back(SeparatorCertificate<S>::make(both, delta[i], lifted[i]));
  }
  return out;
}

using PointMask = boost::dynamic_bitset<>;

/// Distinct lines through at least two points of sigma, each as the mask of
/// the points it contains, in order of first pair.
template <class S>
std::vector<PointMask> line_masks(const PointSet<S>& sigma) {
  const std::size_t n = sigma.size();
  std::vector<PointMask> lines;
  std::vector<PointMask> covered(n, PointMask(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (covered[i][j]) continue;
      RowSpace<S> span(sigma.ambient_dim() + 1);
      for (const auto* p : {&sigma[i], &sigma[j]}) {
        Vector<S> v(span.cols());
        for (Index c = 0; c < span.cols(); ++c) v(c) = (*p)[static_cast<std::size_t>(c)];
        span.insert(v);
      }
      PointMask mask(n);
      for (std::size_t k = 0; k < n; ++k) {
        Vector<S> v(span.cols());
        for (Index c = 0; c < span.cols(); ++c) v(c) = sigma[k][static_cast<std::size_t>(c)];
        if (span.contains(v)) mask.set(k);
      }
      for (std::size_t a = mask.find_first(); a != PointMask::npos; a = mask.find_next(a)) covered[a] |= mask;
      lines.push_back(std::move(mask));
    }
  }
  return lines;
}

struct LineCount {
  std::size_t count = 0;
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Largest number of points of sigma on one line, with two of them.
template <class S>
LineCount max_on_lines(const PointSet<S>& sigma) {
  if (sigma.size() < 2) throw Error(ErrorCode::TooFew, "need at least two points");
  LineCount best;
  for (const auto& m : line_masks(sigma)) {
    if (m.count() > best.count) {
      best.count = m.count();
      best.first = m.find_first();
      best.second = m.find_next(best.first);
    }
  }
  return best;
}

/// Line a x + b y + c z through two points of P^2 (cross product).
template <class S>
HomoPoly<S> line_through(const ProjPoint<S>& p, const ProjPoint<S>& q, const field_t<S>& field) {
  const std::vector<S> c{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  return HomoPoly<S>::linear(c, field);
}

template <class S>
struct ConicCount {
  std::size_t count = 0;
  HomoPoly<S> conic;
};

inline constexpr std::size_t kConicSearchCap = 40;

/// Largest number of points of sigma (in P^2) on one conic, with a conic
/// attaining it.
template <class S>
ConicCount<S> max_on_conics(const PointSet<S>& sigma) {
  if (sigma.ambient_dim() != 2) throw Error(ErrorCode::WrongAmbient, "conic counts need points of P^2");
  if (sigma.size() > kConicSearchCap) {
    throw Error(ErrorCode::TooLarge, "conic search is limited to " + std::to_string(kConicSearchCap) + " points");
  }
  const auto& field = sigma.field();
  const std::size_t n = sigma.size();
  const auto basis = monomial_basis(3, 2);
  Matrix<S> rows(static_cast<Index>(n), 6);
  for (std::size_t i = 0; i < n; ++i) rows.row(static_cast<Index>(i)) = monomial_values(sigma[i].coords(), basis, 2, field).transpose();
  auto to_conic = [&](const Vector<S>& c) { return HomoPoly<S>(3, 2, field, std::vector<S>(c.data(), c.data() + 6)); };

  if (n < 5) {
    const Matrix<S> k = nullspace(rows, field);
    return {n, to_conic(k.col(0))};
  }

  ConicCount<S> best{0, HomoPoly<S>(3, 2, field)};
  // Reducible conics: pairs of lines.
  const auto lines = line_masks(sigma);
  auto pick_line = [&](const PointMask& m) {
    const std::size_t a = m.find_first();
    return line_through(sigma[a], sigma[m.find_next(a)], field);
  };
  auto line_through_one = [&](std::size_t a) {
    std::vector<S> e(3, field.zero());
    e[(sigma[a].pivot() + 1) % 3] = field.one();
    return line_through(sigma[a], ProjPoint<S>::from_coords(e), field);
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const PointMask rest = ~lines[i];
    if (rest.none()) {
      if (lines[i].count() > best.count) best = {lines[i].count(), pick_line(lines[i]) * pick_line(lines[i])};
      continue;
    }
    if (lines[i].count() + 1 > best.count) {
      best = {lines[i].count() + 1, pick_line(lines[i]) * line_through_one(rest.find_first())};
    }
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const std::size_t c = (lines[i] | lines[j]).count();
      if (c > best.count) best = {c, pick_line(lines[i]) * pick_line(lines[j])};
    }
  }
  if (best.count == n) return best;

  // Conics through 5-subsets that impose independent conditions.
  std::vector<std::size_t> idx{0, 1, 2, 3, 4};
  Matrix<S> sub(5, 6);
  while (true) {
    for (Index r = 0; r < 5; ++r) sub.row(r) = rows.row(static_cast<Index>(idx[static_cast<std::size_t>(r)]));
    const Matrix<S> k = nullspace(sub, field);
    if (k.cols() == 1) {
      const Vector<S> values = rows * k.col(0);
      std::size_t c = 0;
      for (Index i = 0; i < values.size(); ++i) c += is_zero(values(i)) ? 1 : 0;
      if (c > best.count) {
        best = {c, to_conic(k.col(0))};
        if (c == n) return best;
      }
    }
    int pos = 4;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 5 + static_cast<std::size_t>(pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < 5; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
  return best;
}

/// Forms of a common degree m whose common zero locus in P^n(F_p) is exactly
/// sigma; then at most m * k points of sigma lie on a curve of degree k.
struct IncidenceCertificate {
  std::vector<HomoPoly<Fp>> generators;
  int lambda = 0;
  std::size_t bound(int k) const { return static_cast<std::size_t>(lambda) * static_cast<std::size_t>(k); }
};

/// Verifies by full scan; LocusMismatch lists the symmetric difference.
IncidenceCertificate incidence_bound_from_intersection(const PointSet<Fp>& sigma,
                                                       const std::vector<HomoPoly<Fp>>& generators,
                                                       const ScanOptions& opts = {});

enum class Verdict { Yes, No, Unknown };
std::string verdict_name(Verdict v);

struct BeseCondition {
  int k = 0;
  long bound = 0;                    // k (xi + 3 - k) - 2
  std::optional<std::size_t> value;  // exact nu_k (k <= 2) or an upper bound
  bool exact = false;
  std::string source;
  Verdict holds = Verdict::Unknown;
};

enum class ScanStatus { Free, BasePoint, NotScanned };
std::string scan_status_name(ScanStatus s);

struct BeseWitness {
  ProjPoint<Fp> point;
  std::optional<std::size_t> sigma_index;
  std::optional<std::vector<Fp>> direction;
};

struct BeseReport {
  int xi = 0;
  std::size_t delta = 0;
  long delta_bound = 0;
  bool delta_holds = false;
  std::vector<BeseCondition> conditions;
  Verdict hypotheses_hold = Verdict::Unknown;
  ScanStatus scan = ScanStatus::NotScanned;
  std::optional<BeseWitness> witness;
  std::string scan_label = "F_p-rational scan";
};

struct BeseOptions {
  ScanOptions scan;
  bool run_scan = true;
  std::optional<IncidenceCertificate> incidence;
};

/// The two tangent directions spanning T_P P^2 modulo P: unit vectors at the
/// coordinates other than P's pivot.
std::pair<std::vector<Fp>, std::vector<Fp>> tangent_frame(const ProjPoint<Fp>& p, const PrimeField& field);

BeseReport bese_check(const PointSet<Fp>& sigma, int xi, const BeseOptions& opts = {});

}  // namespace factlab
