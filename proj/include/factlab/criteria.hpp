#pragma once

// Hypothesis engines for the independence and factoriality criteria, and the
// classifier for nodal surfaces of degree 2r in P^3.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factlab/homo_poly.hpp"
#include "factlab/parallel.hpp"
#include "factlab/projgeom.hpp"

namespace factlab {

enum class CriterionId {
  MainBullet1,
  MainBullet2,
  MainBullet3,
  Prop3r4,
  DoubleSolid,
  Hypersurface,
  Ci1,
  Ci2,
  DoubleHypersurface,
};
std::string criterion_name(CriterionId id);

/// `instantiated` has the form "a OP b" with exact rationals a, b and OP one
/// of < <= > >= =.
struct Inequality {
  std::string text;
  std::string instantiated;
  bool holds = false;
};

struct CriterionVerdict {
  CriterionId id = CriterionId::MainBullet1;
  bool applies = false;
  std::vector<Inequality> inequalities;
  std::optional<int> certified_degree;
  std::vector<std::pair<std::string, std::string>> parameters;
  bool conditional = false;
  std::vector<std::string> notes;
};

/// Re-evaluates an instantiated inequality string exactly.
bool evaluate_instantiated(const std::string& inequality);

/// All three bullets of the main criterion for points on which at most
/// lambda * k lie on any curve of degree k. For bullets 2 and 3 the set of
/// admissible mu is an interval computed in closed form; the smallest
/// admissible mu is reported.
std::vector<CriterionVerdict> theorem_main_bullets(int n, int lambda, long size, int xi);

/// The first bullet that applies; when none does, bullet 1's verdict with the
/// failed conditions of all bullets attached.
CriterionVerdict theorem_main_certify(int n, int lambda, long size, int xi);

/// size < (2r-1)(r-eps), degree 3r-4-eps. Without an incidence certificate the
/// verdict is flagged conditional.
CriterionVerdict prop_3r4_certify(int r, int eps, long size, bool incidence_certified = false);

CriterionVerdict app_double_solid(int r, long nsing);
CriterionVerdict app_hypersurface(int d, long nsing);
CriterionVerdict app_ci1(int m, int k, long nsing);
CriterionVerdict app_ci2(int m, int k, long nsing);
CriterionVerdict app_double_hypersurface(int d, int r, long nsing);

/// scale * f = g_r^2 - g_1 * g_rest, with g_1 the plane. Checked on creation.
class NodalFormWitness {
 public:
  static NodalFormWitness make(const HomoPoly<Fp>& f, Fp scale, HomoPoly<Fp> g1, HomoPoly<Fp> gr, HomoPoly<Fp> rest);

  const HomoPoly<Fp>& g1() const { return g1_; }
  const HomoPoly<Fp>& gr() const { return gr_; }
  const HomoPoly<Fp>& rest() const { return rest_; }
  Fp scale() const { return scale_; }

 private:
  NodalFormWitness(Fp s, HomoPoly<Fp> g1, HomoPoly<Fp> gr, HomoPoly<Fp> rest)
      : scale_(s), g1_(std::move(g1)), gr_(std::move(gr)), rest_(std::move(rest)) {}

  Fp scale_;
  HomoPoly<Fp> g1_;
  HomoPoly<Fp> gr_;
  HomoPoly<Fp> rest_;
};

struct DetectOptions {
  std::vector<HomoPoly<Fp>> extra_planes;
  /// Also try every plane of P^3(F_p); allowed for p <= 31.
  bool exhaustive_planes = false;
};

/// Planes through three non-collinear points of sing containing at least
/// `threshold` of them, as normalized linear forms in first-found order.
std::vector<HomoPoly<Fp>> candidate_planes(const PointSet<Fp>& sing, std::size_t threshold);

/// Tries to write f as g_r^2 - l * g_{2r-1} for a candidate plane l.
std::optional<NodalFormWitness> detect_nodal_surface_form(const HomoPoly<Fp>& f, const PointSet<Fp>& sing,
                                                          const DetectOptions& opts = {});

enum class HongParkStatus { Factorial, NonfactorialStructured, NonfactorialUnstructured, OutOfRange, Unknown };
std::string hong_park_status_name(HongParkStatus s);

struct HongParkVerdict {
  HongParkStatus status = HongParkStatus::Unknown;
  int r = 0;
  std::size_t nsing = 0;
  bool nodal = false;
  std::optional<std::size_t> defect;
  std::optional<NodalFormWitness> witness;
  std::vector<std::string> notes;
  std::string evidence = "mod-p evidence";
};

HongParkVerdict hong_park_classify(const HomoPoly<Fp>& f, int r, const ScanOptions& scan = {},
                                   const DetectOptions& detect = {});

}  // namespace factlab
