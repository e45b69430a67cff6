#include <doctest.h>

#include <tuple>

#include "factlab/families.hpp"
#include "fixtures.hpp"

using namespace factlab;

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

FamilySpec spec_of(Family f, std::uint32_t p) {
  FamilySpec s;
  s.family = f;
  s.p = p;
  return s;
}

bool all_true(const std::vector<bool>& v) {
  for (bool b : v)
    if (!b) return false;
  return true;
}

}  // namespace

TEST_CASE("double solid node counts and placement") {
  for (int r : {2, 3}) {
    const auto& fam = fixtures::double_solid(r);
    CHECK(fam.instance.sing.size() == static_cast<std::size_t>((2 * r - 1) * r));
    CHECK(fam.expected_nodes == fam.instance.sing.size());
    CHECK(fam.instance.clean);
    CHECK(all_true(fam.instance.node_flags));
    const auto& g1 = fixtures::part(fam, "g1");
    const auto& gr = fixtures::part(fam, "g_r");
    const auto& rest = fixtures::part(fam, "g_2r-1");
    CHECK(gr * gr - g1 * rest == fam.instance.defining[0]);
    for (const auto& q : fam.instance.sing) {
      CHECK(eval(g1, q.coords()).v == 0);
      CHECK(eval(gr, q.coords()).v == 0);
      CHECK(eval(rest, q.coords()).v == 0);
    }
  }
}

TEST_CASE("double solid defects") {
  const auto& r2 = fixtures::double_solid(2);
  CHECK(defect(r2.instance.sing, 2).defect == 1);
  CHECK(defect(r2.instance.sing, 3).defect == 0);
  const auto& r3 = fixtures::double_solid(3);
  CHECK(defect(r3.instance.sing, 5).defect == 1);
}

TEST_CASE("hypersurface family") {
  for (int d : {3, 4}) {
    auto s = spec_of(Family::Hypersurface, 31);
    s.d = d;
    const auto fam = generate(s);
    CHECK(fam.instance.sing.size() == static_cast<std::size_t>((d - 1) * (d - 1)));
    CHECK(fam.instance.clean);
    CHECK(fam.instance.ambient_dim == 4);
    for (const auto& q : fam.instance.sing) {
      CHECK(q[0].v == 0);
      CHECK(q[1].v == 0);
    }
    const int xi = 2 * d - 5;
    const auto r = defect(fam.instance.sing, xi);
    if (d == 3) CHECK(r.defect == 1);
    if (d == 4) CHECK(r.defect >= 1);
  }
}

TEST_CASE("complete intersection family") {
  for (auto [m, k, n] : std::vector<std::tuple<int, int, std::size_t>>{{2, 2, 3}, {3, 2, 7}}) {
    auto s = spec_of(Family::CiPlane, 11);
    s.m = m;
    s.k = k;
    const auto fam = generate(s);
    CHECK(fam.instance.sing.size() == n);
    CHECK(expected_node_count(s) == n);
    CHECK(fam.instance.clean);
    CHECK(fam.instance.defining.size() == 2);
    for (const auto& q : fam.instance.sing) {
      CHECK(q[0].v == 0);
      CHECK(q[1].v == 0);
      CHECK(q[2].v == 0);
      CHECK(ci_is_node(fam.instance.defining[0], fam.instance.defining[1], q));
    }
  }
}

TEST_CASE("generation is deterministic") {
  FamilySpec s;
  const auto a = generate(s);
  const auto b = generate(s);
  CHECK(a.seed == b.seed);
  CHECK(a.instance.sing == b.instance.sing);
  CHECK(a.instance.defining == b.instance.defining);
  s.scan.threads = 4;
  CHECK(generate(s).instance.defining == a.instance.defining);
  s.seed = 2;
  CHECK_FALSE(generate(s).instance.defining == a.instance.defining);
}

TEST_CASE("small fields either verify or report a degenerate draw") {
  auto s = spec_of(Family::DoubleSolid, 5);
  s.r = 2;
  try {
    const auto fam = generate(s);
    CHECK(fam.instance.sing.size() == 6);
    CHECK(fam.instance.clean);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDraw);
    CHECK(std::string(e.what()).find("seed") != std::string::npos);
  }
}

TEST_CASE("parameter errors") {
  auto s = spec_of(Family::DoubleSolid, 5);
  s.r = 3;
  CHECK(code_of([&] { generate(s); }) == ErrorCode::CharTooSmall);
  s.r = 1;
  s.p = 101;
  CHECK(code_of([&] { generate(s); }) == ErrorCode::BadParams);
  auto h = spec_of(Family::Hypersurface, 31);
  h.d = 2;
  CHECK(code_of([&] { generate(h); }) == ErrorCode::BadParams);
  auto c = spec_of(Family::CiPlane, 11);
  c.m = 2;
  c.k = 3;
  CHECK(code_of([&] { generate(c); }) == ErrorCode::BadParams);
  CHECK(code_of([] { parse_family("quartic"); }) == ErrorCode::BadParams);
  CHECK(parse_family("ci_plane") == Family::CiPlane);
}

TEST_CASE("expected_node_count") {
  FamilySpec s;
  for (int r = 2; r <= 10; ++r) {
    s.r = r;
    CHECK(expected_node_count(s) == static_cast<std::size_t>((2 * r - 1) * r));
  }
  s.family = Family::Hypersurface;
  s.d = 6;
  CHECK(expected_node_count(s) == 25);
  s.family = Family::CiPlane;
  s.m = 7;
  s.k = 2;
  CHECK(expected_node_count(s) == 43);
}

TEST_CASE("random rational curves") {
  const PrimeField field(101);
  SplitMix64 rng(5);
  for (int e = 2; e <= 4; ++e) {
    const auto c = random_rational_curve(e, field, rng);
    REQUIRE(c);
    CHECK(c->equation.degree() == e);
    CHECK(c->phi.size() == 3);
    for (const auto& q : c->good_points) {
      CHECK(eval(c->equation, q.coords()).v == 0);
      const auto grad = gradient(c->equation);
      bool smooth = false;
      for (const auto& g : grad) smooth = smooth || eval(g, q.coords()).v != 0;
      CHECK(smooth);
    }
  }
}

TEST_CASE("random_form_singular_at") {
  const PrimeField field(101);
  SplitMix64 rng(3);
  const auto pts = random_point_set(3, 4, field, 8);
  const auto f = random_form_singular_at(pts.points(), 4, 4, field, rng);
  for (const auto& q : pts) {
    CHECK(eval(f, q.coords()).v == 0);
    for (const auto& g : gradient(f)) CHECK(eval(g, q.coords()).v == 0);
  }
}
