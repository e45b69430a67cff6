#include <doctest.h>

#include "factlab/criteria.hpp"
#include "factlab/sing_locus.hpp"
#include "fixtures.hpp"

using namespace factlab;
using fixtures::poly;

namespace {

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

std::string param(const CriterionVerdict& v, const std::string& key) {
  for (const auto& [k, val] : v.parameters)
    if (k == key) return val;
  return "";
}

BigInt floor_of(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  BigInt f = num / den;
  if (num % den != 0 && num < 0) f -= 1;
  return f;
}

/// Smallest mu = t/D satisfying bullet 2 (or 3), by walking a grid whose
/// denominator D is divisible by every endpoint denominator.
std::optional<Rational> grid_mu(int bullet, int n, int lambda, long size, int xi) {
  const long den = 3L * n * (n - 1) * lambda;
  for (long t = 1; t <= den * 20; ++t) {
    const Rational mu(t, den);
    bool ok = Rational(size) <= Rational(lambda) * mu;
    if (bullet == 2) {
      ok = ok && floor_of(3 * mu - 3) == xi && Rational(floor_of(3 * mu)) - mu - 2 >= lambda && lambda >= mu;
    } else {
      ok = ok && floor_of(Rational(n) * mu) == xi && Rational(n - 1) * mu >= lambda;
    }
    if (ok) return mu;
  }
  return std::nullopt;
}

void check_round_trip(const CriterionVerdict& v) {
  bool all = true;
  for (const auto& i : v.inequalities) {
    CHECK(evaluate_instantiated(i.instantiated) == i.holds);
    all = all && i.holds;
  }
  if (v.applies) CHECK(all);
  CHECK(v.applies == v.certified_degree.has_value());
}

}  // namespace

TEST_CASE("theorem_main examples") {
  const auto a = theorem_main_certify(3, 9, 44, 10);
  CHECK(a.applies);
  CHECK(a.id == CriterionId::MainBullet1);
  CHECK(a.certified_degree == 10);
  CHECK(a.inequalities[1].instantiated == "44 < 45");

  const auto b = theorem_main_certify(3, 2, 2, 0);
  CHECK_FALSE(b.applies);
  CHECK(b.notes == std::vector<std::string>{"no bullet applies"});
  for (const auto& i : b.inequalities) CHECK(i.text.rfind("bullet ", 0) == 0);

  const auto bullets = theorem_main_bullets(4, 4, 8, 8);
  CHECK(bullets[2].applies);
  CHECK(param(bullets[2], "mu") == "2");
  CHECK(theorem_main_certify(4, 4, 8, 8).applies);

  CHECK(code_of([] { theorem_main_certify(1, 4, 8, 8); }) == ErrorCode::BadParams);
  CHECK(code_of([] { theorem_main_certify(3, 1, 8, 8); }) == ErrorCode::BadParams);
  CHECK(code_of([] { theorem_main_certify(3, 4, -1, 8); }) == ErrorCode::BadParams);
}

TEST_CASE("main bullets agree with a grid search for mu") {
  for (int n = 2; n <= 5; ++n)
    for (int lambda = 2; lambda <= 9; ++lambda)
      for (int xi = 0; xi <= 14; ++xi)
        for (long size = 0; size <= lambda * 8; size += 3) {
          const auto v = theorem_main_bullets(n, lambda, size, xi);
          for (int bullet : {2, 3}) {
            const auto mu = grid_mu(bullet, n, lambda, size, xi);
            const auto& verdict = v[static_cast<std::size_t>(bullet - 1)];
            CHECK(verdict.applies == mu.has_value());
            if (mu) CHECK(param(verdict, "mu") == RationalField().format(*mu));
          }
          const bool b1 = Rational(xi) == Rational(floor_of(Rational(3 * lambda, 2) - 3)) &&
                          size < static_cast<long>(lambda) * ((lambda + 1) / 2);
          CHECK(v[0].applies == b1);
          for (const auto& b : v) check_round_trip(b);
        }
}

TEST_CASE("theorem_main is monotone in the size") {
  for (int n = 2; n <= 4; ++n)
    for (int lambda = 2; lambda <= 8; ++lambda)
      for (int xi = 0; xi <= 12; ++xi) {
        bool seen_fail = false;
        for (long size = 0; size <= 70; ++size) {
          const bool ok = theorem_main_certify(n, lambda, size, xi).applies;
          if (seen_fail) CHECK_FALSE(ok);
          seen_fail = seen_fail || !ok;
        }
      }
}

TEST_CASE("prop_3r4_certify") {
  const auto a = prop_3r4_certify(5, 0, 44);
  CHECK(a.applies);
  CHECK(a.certified_degree == 11);
  CHECK(a.conditional);
  CHECK_FALSE(prop_3r4_certify(5, 0, 45).applies);
  const auto c = prop_3r4_certify(3, 1, 9, true);
  CHECK(c.applies);
  CHECK(c.certified_degree == 4);
  CHECK_FALSE(c.conditional);
  CHECK(code_of([] { prop_3r4_certify(1, 0, 3); }) == ErrorCode::BadParams);
  CHECK(code_of([] { prop_3r4_certify(3, -1, 3); }) == ErrorCode::BadParams);
  check_round_trip(a);
  check_round_trip(c);
}

TEST_CASE("application bounds") {
  CHECK(app_double_solid(2, 5).applies);
  CHECK_FALSE(app_double_solid(2, 6).applies);
  CHECK(app_double_solid(3, 14).applies);
  CHECK(app_double_solid(3, 14).certified_degree == 5);
  for (int r = 2; r <= 50; ++r) {
    CHECK(app_double_solid(r, (2 * r - 1) * r - 1).applies);
    CHECK_FALSE(app_double_solid(r, (2 * r - 1) * r).applies);
  }

  CHECK(app_hypersurface(6, 16).applies);
  CHECK(app_hypersurface(6, 16).inequalities[0].instantiated == "16 <= 50/3");
  CHECK_FALSE(app_hypersurface(6, 17).applies);
  CHECK(app_hypersurface(3, 2).applies);
  CHECK(app_hypersurface(3, 2).certified_degree == 1);
  CHECK_FALSE(app_hypersurface(3, 4).applies);

  // (m+k-2)(2m+k-6)/5 = 7 * 10 / 5 at m = 7, k = 2.
  CHECK(app_ci1(7, 2, 14).applies);
  CHECK_FALSE(app_ci1(7, 2, 15).applies);
  CHECK_FALSE(app_ci1(7, 2, 21).applies);
  CHECK_FALSE(app_ci1(6, 2, 1).applies);
  CHECK(app_ci1(7, 2, 14).certified_degree == 10);

  CHECK_FALSE(app_ci2(8, 2, 47).applies);
  CHECK(app_ci2(8, 2, 40).applies);
  CHECK_FALSE(app_ci2(7, 2, 1).applies);

  CHECK(app_double_hypersurface(2, 9, 81).applies);
  CHECK_FALSE(app_double_hypersurface(2, 9, 82).applies);
  CHECK_FALSE(app_double_hypersurface(2, 8, 1).applies);
  CHECK(app_double_hypersurface(2, 9, 81).certified_degree == 24);

  CHECK(code_of([] { app_double_solid(1, 0); }) == ErrorCode::BadParams);
  CHECK(code_of([] { app_hypersurface(2, 0); }) == ErrorCode::BadParams);
  CHECK(code_of([] { app_ci1(2, 3, 0); }) == ErrorCode::BadParams);
  CHECK(code_of([] { app_double_hypersurface(5, 2, 0); }) == ErrorCode::BadParams);

  for (const auto& v : {app_double_solid(4, 20), app_hypersurface(7, 24), app_ci1(9, 3, 30), app_ci2(10, 3, 60),
                        app_double_hypersurface(3, 11, 100)})
    check_round_trip(v);
}

TEST_CASE("evaluate_instantiated") {
  CHECK(evaluate_instantiated("16 <= 50/3"));
  CHECK_FALSE(evaluate_instantiated("17 <= 50/3"));
  CHECK(evaluate_instantiated("-1/2 < 0"));
  CHECK(evaluate_instantiated("4/2 = 2"));
  CHECK_FALSE(evaluate_instantiated("3 > 3"));
  CHECK(evaluate_instantiated("3 >= 3"));
}

TEST_CASE("NodalFormWitness") {
  const auto& fam = fixtures::double_solid(2);
  const auto& f = fam.instance.defining[0];
  const PrimeField field(101);
  const auto& g1 = fixtures::part(fam, "g1");
  const auto& g2 = fixtures::part(fam, "g_r");
  const auto& g3 = fixtures::part(fam, "g_2r-1");
  CHECK_NOTHROW(NodalFormWitness::make(f, field.one(), g1, g2, g3));
  CHECK(code_of([&] { NodalFormWitness::make(f, field.from_int(2), g1, g2, g3); }) == ErrorCode::BadCertificate);
  CHECK(code_of([&] { NodalFormWitness::make(f, field.zero(), g1, g2, g3); }) == ErrorCode::BadCertificate);
}

TEST_CASE("candidate planes and the detector") {
  const auto& fam = fixtures::double_solid(2);
  const auto planes = candidate_planes(fam.instance.sing, 4);
  REQUIRE(planes.size() == 1);
  const auto& g1 = fixtures::part(fam, "g1");
  const Fp ratio = g1.coeff(0) / planes[0].coeff(0);
  CHECK(ratio * planes[0] == g1);

  const auto w = detect_nodal_surface_form(fam.instance.defining[0], fam.instance.sing);
  REQUIRE(w);
  const Fp k = w->g1().coeff(0) / g1.coeff(0);
  CHECK(w->g1() == k * g1);

  // (x^2 + yz)^2 - x * cubic, found through the supplied plane x.
  const auto g = poly("x^2+y*z", 4, 101);
  const auto c = random_homo(4, 3, PrimeField(101), 17);
  const auto f = g * g - poly("x", 4, 101) * c;
  DetectOptions opts;
  opts.extra_planes = {poly("x", 4, 101)};
  const auto wx = detect_nodal_surface_form(f, PointSet<Fp>(3, PrimeField(101)), opts);
  REQUIRE(wx);
  CHECK(wx->g1() == wx->g1().coeff(0) * poly("x", 4, 101));
  CHECK(wx->gr() * wx->gr() - wx->g1() * wx->rest() == wx->scale() * f);
  CHECK_FALSE(detect_nodal_surface_form(f, PointSet<Fp>(3, PrimeField(101))));

  DetectOptions all;
  all.exhaustive_planes = true;
  CHECK(code_of([&] { detect_nodal_surface_form(f, PointSet<Fp>(3, PrimeField(101)), all); }) == ErrorCode::TooLarge);
  const auto g7 = poly("x^2+y*z", 4, 7);
  const auto f7 = g7 * g7 - poly("x+2*w", 4, 7) * random_homo(4, 3, PrimeField(7), 3);
  const auto w7 = detect_nodal_surface_form(f7, PointSet<Fp>(3, PrimeField(7)), all);
  REQUIRE(w7);
  CHECK(w7->gr() * w7->gr() - w7->g1() * w7->rest() == w7->scale() * f7);
}

TEST_CASE("hong_park_classify") {
  for (int r : {2, 3}) {
    const auto& fam = fixtures::double_solid(r);
    const auto& f = fam.instance.defining[0];
    const auto v = hong_park_classify(f, r);
    CHECK(v.status == HongParkStatus::NonfactorialStructured);
    CHECK(v.nsing == static_cast<std::size_t>((2 * r - 1) * r));
    CHECK(v.defect == std::optional<std::size_t>(1));
    CHECK(v.evidence == "mod-p evidence");
    REQUIRE(v.witness);
    CHECK(v.witness->gr() * v.witness->gr() - v.witness->g1() * v.witness->rest() == v.witness->scale() * f);
  }

  const PrimeField field(101);
  std::uint64_t seed = 1;
  HomoPoly<Fp> smooth = random_homo(4, 4, field, seed);
  while (!singular_points(smooth).empty()) smooth = random_homo(4, 4, field, ++seed);
  const auto s = hong_park_classify(smooth, 2);
  CHECK(s.status == HongParkStatus::Factorial);
  CHECK(s.nsing == 0);

  const auto sextic = hong_park_classify(random_homo(4, 6, field, 3), 3);
  CHECK(sextic.status == HongParkStatus::Factorial);

  // Five nodes in general position impose independent conditions on quadrics.
  bool found = false;
  for (std::uint64_t t = 1; t <= 10 && !found; ++t) {
    SplitMix64 rng(t);
    const auto pts = random_point_set(3, 5, field, t);
    const auto f = random_form_singular_at(pts.points(), 4, 4, field, rng);
    const auto inst = analyze_hypersurface(f);
    if (inst.sing.size() != 5 || !inst.clean) continue;
    found = true;
    CHECK(defect(inst.sing, 2).defect == 0);
    CHECK(hong_park_classify(f, 2).status == HongParkStatus::Factorial);
  }
  CHECK(found);

  CHECK(hong_park_classify(poly("x*y*z*w", 4, 101), 2).status == HongParkStatus::OutOfRange);
  CHECK(code_of([&] { hong_park_classify(smooth, 3); }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([&] { hong_park_classify(poly("x^4", 3, 101), 2); }) == ErrorCode::WrongAmbient);
}
