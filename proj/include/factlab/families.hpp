#pragma once

// Seeded generators for the three extremal non-factorial families. Every
// returned instance has had its singular locus scanned and its node count and
// node types verified.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "factlab/homo_poly.hpp"
#include "factlab/parallel.hpp"
#include "factlab/sing_locus.hpp"

namespace factlab {

enum class Family { DoubleSolid, Hypersurface, CiPlane };
std::string family_name(Family f);
Family parse_family(const std::string& name);

struct FamilySpec {
  Family family = Family::DoubleSolid;
  int r = 2;
  int d = 3;
  int m = 2;
  int k = 2;
  std::uint32_t p = 101;
  std::uint64_t seed = 1;
  int max_retries = 5;
  /// CI family only: also require F and G to be smooth (by scan).
  bool check_smooth = false;
  ScanOptions scan;
};

struct FamilyInstance {
  NodalInstance instance;
  std::uint64_t seed;
  std::size_t expected_nodes;
  /// Named building blocks, e.g. g1, g_r, g_2r-1 for the double solid.
  std::vector<std::pair<std::string, HomoPoly<Fp>>> parts;
};

/// Example with f = g_r^2 - g_1 g_{2r-1} and (2r-1)r nodes.
FamilyInstance gen_double_solid_nonfactorial(const FamilySpec& spec);
/// x g + y f = 0 in P^4 with (d-1)^2 nodes on the plane x = y = 0.
FamilyInstance gen_hypersurface_nonfactorial(const FamilySpec& spec);
/// F = G = 0 in P^5, both containing x = y = z = 0, with
/// (m+k-2)^2 - (m-1)(k-1) nodes.
FamilyInstance gen_ci_nonfactorial(const FamilySpec& spec);

FamilyInstance generate(const FamilySpec& spec);

std::size_t expected_node_count(const FamilySpec& spec);

/// A plane curve given by a parametrization t -> phi(t) of degree e and its
/// implicit equation.
struct RationalCurve {
  std::vector<HomoPoly<Fp>> phi;  // three binary forms of degree e
  HomoPoly<Fp> equation;          // ternary form of degree e
  /// Points phi(t) that are smooth on the curve and hit by exactly one
  /// parameter, in parameter order.
  std::vector<ProjPoint<Fp>> good_points;
};

/// Seeded rational plane curve of degree e; nullopt when the draw is
/// degenerate (image not of degree e).
std::optional<RationalCurve> random_rational_curve(int e, const PrimeField& field, SplitMix64& rng);

/// Seeded random element of the space of ternary forms of degree `degree`
/// vanishing at `points`; nullopt when that space is zero.
std::optional<HomoPoly<Fp>> random_form_through(const std::vector<ProjPoint<Fp>>& points, int degree,
                                                const PrimeField& field, SplitMix64& rng);

/// Seeded form of the given degree singular at every listed point.
HomoPoly<Fp> random_form_singular_at(const std::vector<ProjPoint<Fp>>& points, int nvars, int degree,
                                     const PrimeField& field, SplitMix64& rng);

}  // namespace factlab
