#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "factlab/error.hpp"
#include "factlab/field.hpp"
#include "factlab/linalg.hpp"

namespace factlab {

/// Point of P^n, stored with its first nonzero coordinate equal to 1.
template <class S>
class ProjPoint {
 public:
  static ProjPoint from_coords(std::vector<S> coords) {
    std::size_t pivot = coords.size();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!is_zero(coords[i])) {
        pivot = i;
        break;
      }
    }
    if (pivot == coords.size()) throw Error(ErrorCode::ZeroVector, "projective point with all coordinates zero");
    const S inv = inverse(coords[pivot]);
    for (auto& c : coords) c *= inv;
    return ProjPoint(std::move(coords), pivot);
  }

  std::span<const S> coords() const { return coords_; }
  const std::vector<S>& vec() const { return coords_; }
  const S& operator[](std::size_t i) const { return coords_[i]; }
  int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }
  std::size_t pivot() const { return pivot_; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
  }

 private:
  ProjPoint(std::vector<S> c, std::size_t pivot) : coords_(std::move(c)), pivot_(pivot) {}

  std::vector<S> coords_;
  std::size_t pivot_;
};

template <class S>
ProjPoint<S> canonicalize(std::vector<S> coords) {
  return ProjPoint<S>::from_coords(std::move(coords));
}

/// Ordered set of distinct points of P^n over one field.
template <class S>
class PointSet {
 public:
  using Field = field_t<S>;

  PointSet(int ambient_dim, Field field) : n_(ambient_dim), field_(std::move(field)) {}

  PointSet(int ambient_dim, Field field, const std::vector<ProjPoint<S>>& points)
      : PointSet(ambient_dim, std::move(field)) {
    for (const auto& p : points) add(p);
  }

  void add(const ProjPoint<S>& p) {
    if (p.ambient_dim() != n_) throw Error(ErrorCode::WrongAmbient, "point of the wrong dimension");
    if (!index_.emplace(p, points_.size()).second) throw Error(ErrorCode::DuplicatePoint, "point already in the set");
    points_.push_back(p);
  }

  /// Adds unless present; returns whether it was new.
  bool insert(const ProjPoint<S>& p) {
    if (contains(p)) return false;
    add(p);
    return true;
  }

  bool contains(const ProjPoint<S>& p) const { return index_.count(p) != 0; }
  std::optional<std::size_t> index_of(const ProjPoint<S>& p) const {
    const auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int ambient_dim() const { return n_; }
  const Field& field() const { return field_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const ProjPoint<S>& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<ProjPoint<S>>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Copy without point i.
  PointSet without(std::size_t i) const {
    PointSet out(n_, field_);
    for (std::size_t k = 0; k < points_.size(); ++k)
      if (k != i) out.add(points_[k]);
    return out;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.n_ == b.n_ && a.points_ == b.points_; }

 private:
  int n_;
  Field field_;
  std::vector<ProjPoint<S>> points_;
  std::map<ProjPoint<S>, std::size_t> index_;
};

/// Rows are the coordinate vectors of the points.
template <class S>
Matrix<S> coordinate_matrix(std::span<const ProjPoint<S>> points) {
  const Index cols = points.empty() ? 0 : static_cast<Index>(points.front().coords().size());
  Matrix<S> m(static_cast<Index>(points.size()), cols);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (Index j = 0; j < cols; ++j) m(static_cast<Index>(i), j) = points[i][static_cast<std::size_t>(j)];
  return m;
}

/// Projective dimension of the span: rank of the coordinate matrix minus 1.
template <class S>
int span_dim(std::span<const ProjPoint<S>> points) {
  if (points.empty()) throw Error(ErrorCode::TooFew, "span of no points");
  return static_cast<int>(rank(coordinate_matrix(points))) - 1;
}

template <class S>
int span_dim(const std::vector<ProjPoint<S>>& points) {
  return span_dim(std::span<const ProjPoint<S>>(points));
}

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// The points of P^n(F_p) in a fixed order: pivot position ascending, then
/// lexicographic on the coordinates after the pivot. Any index range can be
/// walked independently, so scans split into chunks.
class ProjectiveRange {
 public:
  ProjectiveRange(int n, std::uint32_t p, std::uint64_t cap = kDefaultEnumerationCap);

  int n() const { return n_; }
  std::uint32_t p() const { return p_; }
  std::uint64_t size() const { return size_; }

  /// Raw residues of the point with the given index.
  void coords_at(std::uint64_t index, std::vector<std::uint32_t>& out) const;
  ProjPoint<Fp> at(std::uint64_t index) const;

  /// Calls fn(raw_coords) for every index in [begin, end).
  template <class Fn>
  void for_each_raw(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (begin >= end) return;
    std::vector<std::uint32_t> c;
    coords_at(begin, c);
    std::size_t pivot = 0;
    while (c[pivot] == 0) ++pivot;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      fn(static_cast<const std::vector<std::uint32_t>&>(c));
      std::size_t j = c.size();
      bool carried = true;
      while (j > pivot + 1) {
        --j;
        if (++c[j] < p_) {
          carried = false;
          break;
        }
        c[j] = 0;
      }
      if (carried && pivot + 1 < c.size()) {
        c[pivot] = 0;
        ++pivot;
        c[pivot] = 1;
      }
    }
  }

  template <class Fn>
  void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    for_each_raw(begin, end, [&](const std::vector<std::uint32_t>& raw) { fn(to_point(raw)); });
  }

  ProjPoint<Fp> to_point(const std::vector<std::uint32_t>& raw) const;

 private:
  int n_;
  std::uint32_t p_;
  std::uint64_t size_;
};

/// Number of points of P^n(F_p), saturating at UINT64_MAX.
std::uint64_t projective_count(int n, std::uint32_t p);

/// Every point of P^n(F_p); guarded by the cap.
std::vector<ProjPoint<Fp>> enumerate_projective(int n, std::uint32_t p, std::uint64_t cap = kDefaultEnumerationCap);

/// Projection from the span Omega of `generators` onto the coordinate
/// subspace Pi spanned by the `target` coordinates.
template <class S>
class LinearCenter {
 public:
  LinearCenter(int ambient_dim, std::vector<std::vector<S>> generators, std::vector<int> target, field_t<S> field)
      : n_(ambient_dim), generators_(std::move(generators)), target_(std::move(target)), field_(std::move(field)) {
    const int k = static_cast<int>(generators_.size());
    const int m = static_cast<int>(target_.size()) - 1;
    if (m < 1 || k != n_ - m) throw Error(ErrorCode::BadParams, "center dimension must be n - m - 1");
    std::vector<bool> in_target(static_cast<std::size_t>(n_ + 1), false);
    for (int t : target_) {
      if (t < 0 || t > n_ || in_target[static_cast<std::size_t>(t)]) throw Error(ErrorCode::BadParams, "bad target coordinates");
      in_target[static_cast<std::size_t>(t)] = true;
    }
    for (int j = 0; j <= n_; ++j)
      if (!in_target[static_cast<std::size_t>(j)]) others_.push_back(j);
    for (const auto& g : generators_) {
      if (static_cast<int>(g.size()) != n_ + 1) throw Error(ErrorCode::BadParams, "generator of the wrong length");
    }
    // Omega misses Pi (and has independent generators) iff the generators
    // restricted to the non-target coordinates form an invertible block.
    block_ = zero_matrix<S>(k, k, field_);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i)
        block_(j, i) = generators_[static_cast<std::size_t>(i)][static_cast<std::size_t>(others_[static_cast<std::size_t>(j)])];
    if (static_cast<int>(rank(block_)) != k) {
      throw Error(ErrorCode::BadParams, "center meets the target subspace or has dependent generators");
    }
  }

  int ambient_dim() const { return n_; }
  int target_dim() const { return static_cast<int>(target_.size()) - 1; }
  const std::vector<std::vector<S>>& generators() const { return generators_; }
  const std::vector<int>& target() const { return target_; }
  const field_t<S>& field() const { return field_; }

  /// Image of P; throws CenterHit when P lies in Omega.
  ProjPoint<S> project(const ProjPoint<S>& point) const {
    const Index k = static_cast<Index>(generators_.size());
    Vector<S> rhs(k);
    for (Index j = 0; j < k; ++j) rhs(j) = -point[static_cast<std::size_t>(others_[static_cast<std::size_t>(j)])];
    const auto a = solve(block_, rhs, field_);
    std::vector<S> q(point.vec());
    for (Index i = 0; i < k; ++i)
      for (std::size_t c = 0; c < q.size(); ++c) q[c] += (*a)(i)*generators_[static_cast<std::size_t>(i)][c];
    std::vector<S> image;
    bool nonzero = false;
    for (int t : target_) {
      image.push_back(q[static_cast<std::size_t>(t)]);
      nonzero = nonzero || !is_zero(image.back());
    }
    if (!nonzero) throw Error(ErrorCode::CenterHit, "point lies in the projection center");
    return ProjPoint<S>::from_coords(std::move(image));
  }

 private:
  int n_;
  std::vector<std::vector<S>> generators_;
  std::vector<int> target_;
  std::vector<int> others_;
  field_t<S> field_;
  Matrix<S> block_;
};

template <class S>
ProjPoint<S> project_point(const ProjPoint<S>& point, const LinearCenter<S>& center) {
  return center.project(point);
}

template <class S>
struct Projection {
  PointSet<S> image;
  /// image_index[i] is the position of psi(sigma[i]) in `image`.
  std::vector<std::size_t> image_index;
  /// Pairs (earlier, later) of source indices with equal images.
  std::vector<std::pair<std::size_t, std::size_t>> collisions;
  bool injective() const { return collisions.empty(); }
};

template <class S>
Projection<S> project_set(const PointSet<S>& sigma, const LinearCenter<S>& center) {
  Projection<S> out{PointSet<S>(center.target_dim(), sigma.field()), {}, {}};
  std::vector<std::size_t> first_source;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const ProjPoint<S> q = center.project(sigma[i]);
    if (const auto at = out.image.index_of(q)) {
      out.collisions.emplace_back(first_source[*at], i);
      out.image_index.push_back(*at);
    } else {
      out.image_index.push_back(out.image.size());
      first_source.push_back(i);
      out.image.add(q);
    }
  }
  return out;
}

/// Seeded center of dimension n - m - 1 projecting onto coordinates 0..m.
template <class F>
LinearCenter<typename F::Scalar> random_center(int n, int m, const F& field, std::uint64_t seed) {
  using S = typename F::Scalar;
  if (m < 2 || m >= n) throw Error(ErrorCode::BadParams, "random_center needs 2 <= m < n");
  SplitMix64 rng(seed);
  std::vector<int> target;
  for (int i = 0; i <= m; ++i) target.push_back(i);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<S>> gens(static_cast<std::size_t>(n - m));
    for (auto& g : gens) {
      g.resize(static_cast<std::size_t>(n + 1));
      for (auto& c : g) c = random_scalar(field, rng);
    }
    try {
      return LinearCenter<S>(n, std::move(gens), target, field);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BadParams) throw;
    }
  }
  throw Error(ErrorCode::FieldTooSmall, "no independent center found after 100 draws");
}

/// Uniformly drawn point (nonzero vector, canonicalized).
template <class F>
ProjPoint<typename F::Scalar> random_point(int n, const F& field, SplitMix64& rng) {
  while (true) {
    std::vector<typename F::Scalar> c(static_cast<std::size_t>(n + 1));
    bool nonzero = false;
    for (auto& x : c) {
      x = random_scalar(field, rng);
      nonzero = nonzero || !is_zero(x);
    }
    if (nonzero) return ProjPoint<typename F::Scalar>::from_coords(std::move(c));
  }
}

/// `count` distinct seeded points.
template <class F>
PointSet<typename F::Scalar> random_point_set(int n, std::size_t count, const F& field, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PointSet<typename F::Scalar> out(n, field);
  std::size_t guard = 0;
  while (out.size() < count) {
    out.insert(random_point(n, field, rng));
    if (++guard > 1000 * (count + 1)) throw Error(ErrorCode::FieldTooSmall, "cannot draw enough distinct points");
  }
  return out;
}

}  // namespace factlab
