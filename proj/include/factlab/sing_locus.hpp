#pragma once

// Singular loci over F_p by exhaustive scan of P^n(F_p), and the ordinary
// double point test at each singular point.

#include <cstdint>
#include <string>
#include <vector>

#include "factlab/homo_poly.hpp"
#include "factlab/parallel.hpp"
#include "factlab/projgeom.hpp"

namespace factlab {

/// A form over F_p flattened for repeated evaluation from a power table.
class CompiledForm {
 public:
  /// `stride` is the row length of the power tables this form will read,
  /// i.e. one more than the largest exponent they hold.
  CompiledForm(const HomoPoly<Fp>& f, int stride);

  /// pw[v * stride + e] must hold x_v^e mod p.
  std::uint64_t eval(const std::uint64_t* pw) const;

 private:
  std::uint64_t p_;
  std::vector<std::uint64_t> coeffs_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> offsets_;
};

/// Fills pw[v * stride + e] = raw[v]^e mod p.
void fill_power_table(const std::vector<std::uint32_t>& raw, std::uint32_t p, int stride, std::uint64_t* pw);

struct NodalInstance {
  NodalInstance(std::vector<HomoPoly<Fp>> forms, PointSet<Fp> points)
      : defining(std::move(forms)), ambient_dim(points.ambient_dim()), sing(std::move(points)) {}

  std::vector<HomoPoly<Fp>> defining;
  int ambient_dim;
  PointSet<Fp> sing;
  std::vector<bool> node_flags;
  bool clean = false;
  std::vector<std::string> warnings;
};

/// Points of P^n(F_p) where f and all its partials vanish, in enumeration
/// order. Refuses p | deg f.
PointSet<Fp> singular_points(const HomoPoly<Fp>& f, const ScanOptions& opts = {});

/// Points where F = G = 0 and the 2 x (n+1) Jacobian has rank <= 1.
PointSet<Fp> ci_singular_points(const HomoPoly<Fp>& f, const HomoPoly<Fp>& g, const ScanOptions& opts = {});

/// Common zeros in P^n(F_p) of a list of forms.
PointSet<Fp> common_zeros(const std::vector<HomoPoly<Fp>>& forms, const ScanOptions& opts = {});

/// Affine Hessian rank of a hypersurface at a singular point, using second
/// partials computed once.
class HessianRank {
 public:
  explicit HessianRank(const HomoPoly<Fp>& f);
  std::size_t at(const ProjPoint<Fp>& point) const;

 private:
  int n_;
  std::vector<std::vector<HomoPoly<Fp>>> second_;
};

/// Node test for a complete intersection F = G = 0 at a point of rank-1
/// Jacobian: with dF = c dG (or the roles swapped) in the affine chart, the
/// Hessian of F - c G restricted to ker dG must have rank n - 1.
bool ci_is_node(const HomoPoly<Fp>& f, const HomoPoly<Fp>& g, const ProjPoint<Fp>& point);

/// Fills node_flags, clean and warnings. A singular locus larger than
/// 5 * degree * n is reported as not isolated.
void verify_nodal(NodalInstance& inst);

/// singular_points (or ci_singular_points) followed by verify_nodal.
NodalInstance analyze_hypersurface(const HomoPoly<Fp>& f, const ScanOptions& opts = {});
NodalInstance analyze_complete_intersection(const HomoPoly<Fp>& f, const HomoPoly<Fp>& g, const ScanOptions& opts = {});

}  // namespace factlab
