#include <doctest.h>

#include <algorithm>

#include "factlab/lincond.hpp"
#include "factlab/sing_locus.hpp"
#include "fixtures.hpp"

using namespace factlab;
using fixtures::pset;
using fixtures::pt;

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

PointSet<Rational> collinear_q() {
  PointSet<Rational> s(2, RationalField{});
  for (auto c : std::vector<std::vector<Rational>>{{0, 0, 1}, {0, 1, 1}, {0, 1, 0}, {0, 1, 2}})
    s.add(ProjPoint<Rational>::from_coords(c));
  return s;
}

std::size_t plain_rank_of(const PointSet<Fp>& s, int xi) {
  const auto exps = fixtures::exponents(s.ambient_dim() + 1, xi);
  std::vector<fixtures::Row> rows;
  for (const auto& q : s) rows.push_back(fixtures::monomial_row(fixtures::raw(q), exps, s.field().p()));
  return fixtures::oracle_rank(rows, s.field().p());
}

/// The r = 2 nodes mapped into P^2 by a projection from a point off their
/// plane.
PointSet<Fp> planar_nodes() {
  const auto& fam = fixtures::double_solid(2);
  const auto& g1 = fixtures::part(fam, "g1");
  for (std::uint64_t seed = 1;; ++seed) {
    const auto c = random_center(3, 2, PrimeField(101), seed);
    if (is_zero(eval(g1, c.generators()[0]))) continue;
    const auto pr = project_set(fam.instance.sing, c);
    if (pr.injective()) return pr.image;
  }
}

std::size_t brute_max_on_lines(const PointSet<Fp>& s) {
  std::size_t best = 0;
  const auto p = s.field().p();
  for (const auto& l : fixtures::all_points(2, p)) {
    std::size_t c = 0;
    for (const auto& q : s) {
      const auto x = fixtures::raw(q);
      c += (l[0] * x[0] + l[1] * x[1] + l[2] * x[2]) % p == 0;
    }
    best = std::max(best, c);
  }
  return best;
}

std::size_t brute_max_on_conics(const PointSet<Fp>& s) {
  const auto p = s.field().p();
  const auto exps = fixtures::exponents(3, 2);
  std::vector<fixtures::Row> rows;
  for (const auto& q : s) rows.push_back(fixtures::monomial_row(fixtures::raw(q), exps, p));
  std::size_t best = 0;
  for (const auto& c : fixtures::all_points(5, p)) {
    std::size_t count = 0;
    for (const auto& r : rows) {
      std::uint64_t v = 0;
      for (std::size_t j = 0; j < 6; ++j) v = (v + c[j] * r[j]) % p;
      count += v == 0;
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace

TEST_CASE("evaluation_matrix") {
  const auto one = pset(2, 101, {{1, 2, 3}});
  const auto m = evaluation_matrix(one, 1);
  CHECK(m.entries.rows() == 1);
  CHECK(m.entries.cols() == 3);
  CHECK(rank(m.entries) == 1);

  const auto q = evaluation_matrix(collinear_q(), 1);
  CHECK(rank(q.entries) == 2);

  const PrimeField f(101);
  const auto origin = pt({0, 0, 1}, 101);
  const auto d = evaluation_matrix(PointSet<Fp>(2, f), 1, {{origin, {f.one(), f.zero(), f.zero()}}});
  REQUIRE(d.entries.rows() == 1);
  CHECK(d.entries(0, 0).v == 1);
  CHECK(d.entries(0, 1).v == 0);
  CHECK(d.entries(0, 2).v == 0);
  CHECK(code_of([&] { evaluation_matrix(PointSet<Fp>(2, f), 1, {{origin, {f.zero(), f.zero(), f.from_int(3)}}}); }) ==
        ErrorCode::BadParams);
  CHECK(code_of([&] { evaluation_matrix(one, -1); }) == ErrorCode::BadParams);

  // Directional rows against the derivative of each monomial, done by hand.
  SplitMix64 rng(2);
  const auto exps = fixtures::exponents(3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p0 = random_point(2, f, rng);
    std::vector<Fp> v{random_scalar(f, rng), random_scalar(f, rng), random_scalar(f, rng)};
    try {
      const auto e = evaluation_matrix(PointSet<Fp>(2, f), 3, {{p0, v}});
      for (Index j = 0; j < e.entries.cols(); ++j) {
        const auto& ex = e.cols[static_cast<std::size_t>(j)].exponents;
        Fp acc = f.zero();
        for (int k = 0; k < 3; ++k) {
          if (ex[static_cast<std::size_t>(k)] == 0) continue;
          Fp t = f.from_int(ex[static_cast<std::size_t>(k)]) * v[static_cast<std::size_t>(k)];
          for (int i = 0; i < 3; ++i) t *= pow(p0[static_cast<std::size_t>(i)], static_cast<std::uint64_t>(ex[static_cast<std::size_t>(i)] - (i == k)));
          acc += t;
        }
        CHECK(e.entries(0, j) == acc);
      }
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::BadParams);
    }
  }
}

TEST_CASE("defect") {
  CHECK(defect(PointSet<Fp>(2, PrimeField(101)), 4).defect == 0);
  const auto three = pset(2, 101, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  const auto r = defect(three, 1);
  CHECK(r.defect == 1);
  CHECK(r.dependent_indices == std::vector<std::size_t>{2});
  CHECK(defect(collinear_q(), 1).defect == 2);

  const auto& nodes = fixtures::double_solid(2).instance.sing;
  CHECK(plain_rank_of(nodes, 2) == 5);
  CHECK(defect(nodes, 2).defect == 6 - plain_rank_of(nodes, 2));
  CHECK(defect(nodes, 2).defect == 1);
  CHECK(plain_rank_of(nodes, 3) == 6);
  CHECK(defect(nodes, 3).defect == 0);
  CHECK(defect(nodes, 2, 4).dependent_indices == defect(nodes, 2, 1).dependent_indices);
}

TEST_CASE("is_independent") {
  const auto& nodes = fixtures::double_solid(2).instance.sing;
  CHECK(is_independent(nodes, 3));
  CHECK_FALSE(is_independent(nodes, 2));
  CHECK(is_independent(pset(3, 7, {{1, 2, 3, 4}}), 0));
}

TEST_CASE("separator") {
  const auto two = pset(1, 7, {{1, 0}, {1, 1}});
  const auto s = separator(two, two[0], 1);
  REQUIRE(std::holds_alternative<SeparatorCertificate<Fp>>(s));
  const auto& cert = std::get<SeparatorCertificate<Fp>>(s);
  CHECK(is_zero(eval(cert.form(), two[1].coords())));
  CHECK_FALSE(is_zero(eval(cert.form(), two[0].coords())));

  const auto col = collinear_q();
  for (const auto& q : col) {
    const auto r = separator(col, q, 1);
    REQUIRE(std::holds_alternative<SeparationFailure<Rational>>(r));
    const auto& fail = std::get<SeparationFailure<Rational>>(r);
    // The point's row is the stated combination of the others.
    Vector<Rational> sum = zero_vector<Rational>(3, RationalField{});
    for (const auto& [i, c] : fail.combination) {
      for (Index j = 0; j < 3; ++j) sum(j) += c * col[i][static_cast<std::size_t>(j)];
    }
    for (Index j = 0; j < 3; ++j) CHECK(sum(j) == q[static_cast<std::size_t>(j)]);
  }

  const auto& nodes = fixtures::double_solid(2).instance.sing;
  for (const auto& q : nodes) {
    CHECK(std::holds_alternative<SeparationFailure<Fp>>(separator(nodes, q, 2)));
    CHECK(std::holds_alternative<SeparatorCertificate<Fp>>(separator(nodes, q, 3)));
  }
  CHECK(all_separators(nodes, 3)->size() == 6);
  CHECK_FALSE(all_separators(nodes, 2));
  CHECK(code_of([&] { separator(nodes, pt({1, 0, 0, 0}, 101), 3); }) == ErrorCode::NotInSet);
}

TEST_CASE("separator certificates check themselves") {
  const auto two = pset(2, 7, {{1, 0, 0}, {0, 1, 0}});
  CHECK(code_of([&] { SeparatorCertificate<Fp>::make(two, two[0], fixtures::poly("y", 3, 7)); }) ==
        ErrorCode::BadCertificate);
  CHECK(code_of([&] { SeparatorCertificate<Fp>::make(two, two[0], fixtures::poly("z", 3, 7)); }) ==
        ErrorCode::BadCertificate);
  CHECK(code_of([&] { SeparatorCertificate<Fp>::make(two, pt({0, 0, 1}, 7), fixtures::poly("y", 3, 7)); }) ==
        ErrorCode::NotInSet);
  CHECK_NOTHROW(SeparatorCertificate<Fp>::make(two, two[0], fixtures::poly("x", 3, 7)));
}

TEST_CASE("rank-based independence agrees with exhaustive separator search") {
  int agree = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::uint32_t p = seed % 2 ? 5 : 7;
    const int xi = static_cast<int>(seed % 3);
    const std::size_t size = 1 + seed % 8;
    const auto sigma = random_point_set(2, size, PrimeField(p), seed);
    std::vector<std::vector<std::uint64_t>> raw;
    for (const auto& q : sigma) raw.push_back(fixtures::raw(q));
    const auto sep = fixtures::brute_separable(raw, xi, p);
    const bool brute = std::all_of(sep.begin(), sep.end(), [](bool b) { return b; });
    ++total;
    if (brute == is_independent(sigma, xi)) ++agree;
    for (std::size_t i = 0; i < sigma.size(); ++i)
      CHECK(sep[i] == std::holds_alternative<SeparatorCertificate<Fp>>(separator(sigma, sigma[i], xi)));
  }
  CHECK(agree == total);
}

TEST_CASE("defect is monotone in the degree and in the set") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::uint32_t p = seed % 2 ? 7 : 101;
    const auto sigma = random_point_set(2 + static_cast<int>(seed % 2), 4 + seed % 9, PrimeField(p), seed);
    for (int xi = 0; xi <= 4; ++xi) {
      const auto a = defect(sigma, xi);
      CHECK(defect(sigma, xi + 1).defect <= a.defect);
      CHECK(a.defect <= a.size);
      CHECK((a.defect == 0) == a.dependent_points.empty());
      for (std::size_t i = 0; i < sigma.size(); ++i) CHECK(defect(sigma.without(i), xi).rank + 1 >= a.rank);
    }
  }
  for (const auto* fam : {&fixtures::double_solid(2), &fixtures::double_solid(3)}) {
    for (int xi = 0; xi <= 6; ++xi)
      CHECK(defect(fam->instance.sing, xi + 1).defect <= defect(fam->instance.sing, xi).defect);
  }
}

TEST_CASE("swap_combine") {
  const PrimeField f(101);
  const auto lam = pset(2, 101, {{1, 0, 0}});
  const auto del = pset(2, 101, {{0, 1, 0}});
  const auto seps_l = *all_separators(lam, 1);
  const auto seps_d = *all_separators(del, 0);
  const auto g = fixtures::poly("y", 3, 101);
  const auto out = swap_combine(lam, seps_l, del, seps_d, g, 1);
  REQUIRE(out.size() == 2);
  auto both = lam;
  both.add(del[0]);
  for (const auto& c : out) CHECK_NOTHROW(SeparatorCertificate<Fp>::make(both, c.point(), c.form()));

  const PointSet<Fp> empty(2, f);
  const auto same = swap_combine(lam, seps_l, empty, {}, g, 1);
  REQUIRE(same.size() == 1);
  CHECK(same[0].form() == seps_l[0].form());

  const auto fx = fixtures::swap_fixture(1);
  const auto eight = swap_combine(fx.lambda, fx.seps_lambda, fx.delta, fx.seps_delta, fx.g, 3);
  CHECK(eight.size() == 8);
  auto all = fx.lambda;
  for (const auto& q : fx.delta) all.add(q);
  for (std::size_t i = 0; i < eight.size(); ++i) {
    CHECK(eight[i].point() == all[i]);
    CHECK(eight[i].degree() == 3);
    for (const auto& q : all) CHECK(is_zero(eval(eight[i].form(), q.coords())) == !(q == all[i]));
  }

  CHECK(code_of([&] { swap_combine(lam, seps_l, lam, seps_l, g, 1); }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([&] { swap_combine(lam, seps_l, lam, *all_separators(lam, 0), g, 1); }) == ErrorCode::Overlap);
  CHECK(code_of([&] { swap_combine(lam, seps_l, del, seps_d, fixtures::poly("x", 3, 101), 1); }) ==
        ErrorCode::GMissesLambda);
  CHECK(code_of([&] { swap_combine(lam, seps_l, del, seps_d, fixtures::poly("z", 3, 101), 1); }) ==
        ErrorCode::GVanishesOnDelta);
  CHECK(code_of([&] { swap_combine(lam, seps_l, del, seps_d, fixtures::poly("y^2", 3, 101), 1); }) ==
        ErrorCode::DegreeMismatch);
}

TEST_CASE("swap_combine on random small cases") {
  const PrimeField f(101);
  int built = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SplitMix64 rng(seed);
    const auto lambda = random_point_set(2, 2 + seed % 6, f, seed);
    PointSet<Fp> delta(2, f);
    while (delta.size() < 1 + seed % 5) {
      const auto q = random_point(2, f, rng);
      if (!lambda.contains(q)) delta.insert(q);
    }
    const int zeta = 1 + static_cast<int>(seed % 3);
    const auto g = fixtures::random_form_vanishing_on(lambda, zeta, rng);
    if (!g) continue;
    bool ok = true;
    for (const auto& q : delta) ok = ok && !is_zero(eval(*g, q.coords()));
    const int xi = zeta + 3;
    const auto sl = all_separators(lambda, xi);
    const auto sd = all_separators(delta, xi - zeta);
    if (!ok || !sl || !sd) continue;
    const auto out = swap_combine(lambda, *sl, delta, *sd, *g, xi);
    CHECK(out.size() == lambda.size() + delta.size());
    ++built;
  }
  CHECK(built >= 10);
}

TEST_CASE("max_on_lines") {
  CHECK(max_on_lines(fixtures::double_solid(2).instance.sing).count == 2);
  const auto five = pset(2, 101, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}, {0, 1, 0}, {1, 5, 7}});
  const auto lc = max_on_lines(five);
  CHECK(lc.count == 4);
  CHECK(span_dim(std::vector{five[lc.first], five[lc.second]}) == 1);
  CHECK(max_on_lines(pset(2, 101, {{1, 0, 0}, {0, 1, 0}})).count == 2);
  CHECK(code_of([] { max_on_lines(pset(2, 101, {{1, 0, 0}})); }) == ErrorCode::TooFew);
}

TEST_CASE("max_on_conics") {
  const auto planar = planar_nodes();
  const auto cc = max_on_conics(planar);
  CHECK(cc.count == 6);
  for (const auto& q : planar) CHECK(is_zero(eval(cc.conic, q.coords())));

  const auto generic = random_point_set(2, 6, PrimeField(101), 3);
  CHECK(max_on_conics(generic).count == 5);
  CHECK(max_on_conics(random_point_set(2, 5, PrimeField(101), 4)).count == 5);
  CHECK(code_of([] { max_on_conics(pset(3, 7, {{1, 0, 0, 0}})); }) == ErrorCode::WrongAmbient);
  CHECK(code_of([] { max_on_conics(random_point_set(2, 41, PrimeField(101), 1)); }) == ErrorCode::TooLarge);
}

TEST_CASE("line and conic counts agree with exhaustive search over F_5") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto s = random_point_set(2, 2 + seed % 12, PrimeField(5), seed);
    CHECK(max_on_lines(s).count == brute_max_on_lines(s));
    const auto cc = max_on_conics(s);
    CHECK(cc.count == brute_max_on_conics(s));
    std::size_t on = 0;
    for (const auto& q : s) on += is_zero(eval(cc.conic, q.coords()));
    CHECK(on == cc.count);
  }
}

TEST_CASE("star property on the r = 2 nodes") {
  const auto planar = planar_nodes();
  CHECK(max_on_lines(planar).count == 2);
  const auto cc = max_on_conics(planar);
  CHECK(cc.count == 2 * (4 - 1));
  for (const auto& q : planar) CHECK_FALSE(all_zero(gradient_at(cc.conic, q.coords())));
}

TEST_CASE("incidence_bound_from_intersection") {
  const auto& fam = fixtures::double_solid(2);
  const auto cert = incidence_bound_from_intersection(fam.instance.sing, gradient(fam.instance.defining[0]));
  CHECK(cert.lambda == 3);
  CHECK(cert.bound(2) == 6);
  try {
    incidence_bound_from_intersection(fam.instance.sing.without(0), gradient(fam.instance.defining[0]));
    FAIL("expected LocusMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LocusMismatch);
    std::string text = "(";
    for (std::size_t i = 0; i < 4; ++i) text += (i ? ":" : "") + std::to_string(fam.instance.sing[0][i].v);
    CHECK(std::string(e.what()).find(text + ")") != std::string::npos);
  }
  const auto single = pset(2, 7, {{0, 0, 1}});
  CHECK(incidence_bound_from_intersection(single, {fixtures::poly("x", 3, 7), fixtures::poly("y", 3, 7)}).lambda == 1);
}

TEST_CASE("bese_check on generic points") {
  const auto sigma = random_point_set(2, 6, PrimeField(101), 7);
  BeseOptions one;
  const auto rep = bese_check(sigma, 3, one);
  CHECK(rep.hypotheses_hold == Verdict::Yes);
  CHECK(rep.delta_holds);
  CHECK(rep.scan == ScanStatus::Free);
  CHECK(rep.scan_label == "F_p-rational scan");
  BeseOptions four;
  four.scan.threads = 4;
  const auto rep4 = bese_check(sigma, 3, four);
  CHECK(rep4.scan == rep.scan);
  CHECK(rep4.hypotheses_hold == rep.hypotheses_hold);

  // Twenty random points off sigma each raise the rank, by the plain oracle.
  const auto exps = fixtures::exponents(3, 3);
  std::vector<fixtures::Row> rows;
  for (const auto& q : sigma) rows.push_back(fixtures::monomial_row(fixtures::raw(q), exps, 101));
  SplitMix64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto q = random_point(2, PrimeField(101), rng);
    if (sigma.contains(q)) continue;
    auto more = rows;
    more.push_back(fixtures::monomial_row(fixtures::raw(q), exps, 101));
    CHECK(fixtures::oracle_rank(more, 101) == 7);
  }
}

TEST_CASE("bese_check boundary and smoke cases") {
  const auto conic = planar_nodes();
  const auto rep = bese_check(conic, 3);
  REQUIRE(rep.conditions.size() >= 2);
  CHECK(rep.conditions[1].k == 2);
  CHECK(rep.conditions[1].bound == 6);
  CHECK(rep.conditions[1].value == std::optional<std::size_t>(6));
  CHECK(rep.conditions[1].holds == Verdict::Yes);
  CHECK(rep.scan != ScanStatus::NotScanned);

  PointSet<Fp> plane(2, PrimeField(3));
  for (const auto& q : enumerate_projective(2, 3)) plane.add(q);
  const auto a = bese_check(plane, 3);
  const auto b = bese_check(plane, 3);
  CHECK(a.scan == b.scan);
  CHECK(a.hypotheses_hold == Verdict::No);

  BeseOptions off;
  off.run_scan = false;
  CHECK(bese_check(conic, 3, off).scan == ScanStatus::NotScanned);
  CHECK(code_of([&] { bese_check(conic, 2); }) == ErrorCode::XiTooSmall);
  CHECK(code_of([] { bese_check(pset(3, 7, {{1, 0, 0, 0}}), 3); }) == ErrorCode::WrongAmbient);
}

TEST_CASE("bese_check finds base points") {
  // No nonzero cubic passes through ten general points.
  const auto many = random_point_set(2, 10, PrimeField(31), 5);
  const auto rep = bese_check(many, 3);
  CHECK(rep.hypotheses_hold == Verdict::No);
  CHECK(rep.scan == ScanStatus::BasePoint);

  // Cubics through four points of a line contain the line.
  const auto four = pset(2, 31, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}, {1, 3, 0}});
  const auto r4 = bese_check(four, 3);
  CHECK(r4.conditions[0].holds == Verdict::No);
  CHECK(r4.scan == ScanStatus::BasePoint);
  REQUIRE(r4.witness);
  CHECK(is_zero(r4.witness->point[2]));

  const auto three = pset(2, 31, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}});
  const auto r3 = bese_check(three, 3);
  CHECK(r3.hypotheses_hold == Verdict::Yes);
  CHECK(r3.scan == ScanStatus::Free);
}
