#include "factlab/criteria.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "factlab/lincond.hpp"
#include "factlab/sing_locus.hpp"

namespace factlab {

namespace {

using Q = Rational;

std::string fmt(const Q& x) { return RationalField().format(x); }

Q frac(long a, long b) { return Q(a) / Q(b); }

BigInt floor_q(const Q& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

bool compare(const Q& a, const std::string& op, const Q& b) {
  if (op == "<") return a < b;
  if (op == "<=") return a <= b;
  if (op == ">") return a > b;
  if (op == ">=") return a >= b;
  if (op == "=") return a == b;
  throw Error(ErrorCode::SyntaxError, "unknown comparison '" + op + "'");
}

Inequality ineq(std::string text, const Q& a, const std::string& op, const Q& b) {
  return {std::move(text), fmt(a) + " " + op + " " + fmt(b), compare(a, op, b)};
}

CriterionVerdict finish(CriterionVerdict v, int degree) {
  v.applies = std::all_of(v.inequalities.begin(), v.inequalities.end(), [](const Inequality& i) { return i.holds; });
  if (v.applies) v.certified_degree = degree;
  return v;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParams, what);
}

CriterionVerdict main_bullet1(int lambda, long size, int xi) {
  CriterionVerdict v;
  v.id = CriterionId::MainBullet1;
  const Q req = Q(floor_q(frac(3 * lambda - 6, 2)));
  const long ceil_half = (lambda + 1) / 2;
  v.inequalities.push_back(ineq("xi = floor(3*lambda/2 - 3)", Q(xi), "=", req));
  v.inequalities.push_back(ineq("|Sigma| < lambda*ceil(lambda/2)", Q(size), "<", Q(lambda * ceil_half)));
  return finish(std::move(v), xi);
}

CriterionVerdict main_bullet2(int lambda, long size, int xi) {
  CriterionVerdict v;
  v.id = CriterionId::MainBullet2;
  // floor(3 mu) = xi + 3 pins mu to [(xi+3)/3, (xi+4)/3); the remaining
  // conditions are linear in mu.
  const Q lo = std::max(frac(xi + 3, 3), frac(size, lambda));
  const Q hi = std::min(Q(xi + 1 - lambda), Q(lambda));
  const Q top = frac(xi + 4, 3);
  if (lo <= hi && lo < top) {
    const Q mu = lo;
    v.parameters.emplace_back("mu", fmt(mu));
    v.inequalities.push_back(ineq("xi = floor(3*mu - 3)", Q(xi), "=", Q(floor_q(3 * mu - 3))));
    v.inequalities.push_back(ineq("floor(3*mu) - mu - 2 >= lambda", Q(floor_q(3 * mu)) - mu - 2, ">=", Q(lambda)));
    v.inequalities.push_back(ineq("lambda >= mu", Q(lambda), ">=", mu));
    v.inequalities.push_back(ineq("|Sigma| <= lambda*mu", Q(size), "<=", Q(lambda) * mu));
  } else {
    v.notes.push_back("no rational mu satisfies the conditions");
    v.inequalities.push_back(ineq("max((xi+3)/3, |Sigma|/lambda) <= min(xi+1-lambda, lambda)", lo, "<=", hi));
    v.inequalities.push_back(ineq("max((xi+3)/3, |Sigma|/lambda) < (xi+4)/3", lo, "<", top));
  }
  return finish(std::move(v), xi);
}

CriterionVerdict main_bullet3(int n, int lambda, long size, int xi) {
  CriterionVerdict v;
  v.id = CriterionId::MainBullet3;
  const Q lo = std::max({frac(xi, n), frac(lambda, n - 1), frac(size, lambda)});
  const Q top = frac(xi + 1, n);
  if (lo < top) {
    const Q mu = lo;
    v.parameters.emplace_back("mu", fmt(mu));
    v.inequalities.push_back(ineq("xi = floor(n*mu)", Q(xi), "=", Q(floor_q(Q(n) * mu))));
    v.inequalities.push_back(ineq("(n-1)*mu >= lambda", Q(n - 1) * mu, ">=", Q(lambda)));
    v.inequalities.push_back(ineq("|Sigma| <= lambda*mu", Q(size), "<=", Q(lambda) * mu));
  } else {
    v.notes.push_back("no rational mu satisfies the conditions");
    v.inequalities.push_back(ineq("max(xi/n, lambda/(n-1), |Sigma|/lambda) < (xi+1)/n", lo, "<", top));
  }
  return finish(std::move(v), xi);
}

void add_params(CriterionVerdict& v, std::initializer_list<std::pair<const char*, long>> ps) {
  for (const auto& [name, value] : ps) v.parameters.emplace_back(name, std::to_string(value));
}

}  // namespace

std::string criterion_name(CriterionId id) {
  switch (id) {
    case CriterionId::MainBullet1: return "main_bullet1";
    case CriterionId::MainBullet2: return "main_bullet2";
    case CriterionId::MainBullet3: return "main_bullet3";
    case CriterionId::Prop3r4: return "prop_3r4";
    case CriterionId::DoubleSolid: return "thm_double_solid";
    case CriterionId::Hypersurface: return "thm_hypersurface";
    case CriterionId::Ci1: return "thm_ci1";
    case CriterionId::Ci2: return "thm_ci2";
    case CriterionId::DoubleHypersurface: return "thm_double_hypersurface";
  }
  return "unknown";
}

bool evaluate_instantiated(const std::string& inequality) {
  std::istringstream in(inequality);
  std::string a, op, b, extra;
  if (!(in >> a >> op >> b) || (in >> extra)) throw Error(ErrorCode::SyntaxError, "expected 'a OP b': " + inequality);
  BigInt na, da, nb, db;
  parse_ratio(a, na, da);
  parse_ratio(b, nb, db);
  return compare(Q(na, da), op, Q(nb, db));
}

std::vector<CriterionVerdict> theorem_main_bullets(int n, int lambda, long size, int xi) {
  require(n >= 2 && lambda >= 2 && size >= 0 && xi >= 0, "need n >= 2, lambda >= 2, size >= 0, xi >= 0");
  std::vector<CriterionVerdict> out{main_bullet1(lambda, size, xi), main_bullet2(lambda, size, xi),
                                    main_bullet3(n, lambda, size, xi)};
  for (auto& v : out) add_params(v, {{"n", n}, {"lambda", lambda}, {"|Sigma|", size}, {"xi", xi}});
  return out;
}

CriterionVerdict theorem_main_certify(int n, int lambda, long size, int xi) {
  auto bullets = theorem_main_bullets(n, lambda, size, xi);
  for (auto& v : bullets)
    if (v.applies) return v;
  CriterionVerdict none = bullets.front();
  none.inequalities.clear();
  for (std::size_t b = 0; b < bullets.size(); ++b) {
    for (auto i : bullets[b].inequalities) {
      i.text = "bullet " + std::to_string(b + 1) + ": " + i.text;
      none.inequalities.push_back(std::move(i));
    }
  }
  none.notes = {"no bullet applies"};
  return none;
}

CriterionVerdict prop_3r4_certify(int r, int eps, long size, bool incidence_certified) {
  require(r >= 2 && eps >= 0 && size >= 0, "need r >= 2, eps >= 0, size >= 0");
  CriterionVerdict v;
  v.id = CriterionId::Prop3r4;
  add_params(v, {{"r", r}, {"eps", eps}, {"|Sigma|", size}});
  v.inequalities.push_back(ineq("|Sigma| < (2r-1)(r-eps)", Q(size), "<", Q(static_cast<long>(2 * r - 1) * (r - eps))));
  v = finish(std::move(v), 3 * r - 4 - eps);
  if (!incidence_certified) {
    v.conditional = true;
    v.notes.push_back("conditional on at most (2r-1)k points of Sigma lying on any curve of degree k");
  }
  return v;
}

CriterionVerdict app_double_solid(int r, long nsing) {
  require(r >= 2 && nsing >= 0, "need r >= 2, nsing >= 0");
  CriterionVerdict v;
  v.id = CriterionId::DoubleSolid;
  add_params(v, {{"r", r}, {"|Sing(S)|", nsing}});
  v.inequalities.push_back(ineq("|Sing(S)| < (2r-1)r", Q(nsing), "<", Q(static_cast<long>(2 * r - 1) * r)));
  return finish(std::move(v), 3 * r - 4);
}

CriterionVerdict app_hypersurface(int d, long nsing) {
  require(d >= 3 && nsing >= 0, "need d >= 3, nsing >= 0");
  CriterionVerdict v;
  v.id = CriterionId::Hypersurface;
  add_params(v, {{"d", d}, {"|Sing(V)|", nsing}});
  v.inequalities.push_back(ineq("|Sing(V)| <= 2(d-1)^2/3", Q(nsing), "<=", frac(2L * (d - 1) * (d - 1), 3)));
  return finish(std::move(v), 2 * d - 5);
}

CriterionVerdict app_ci1(int m, int k, long nsing) {
  require(m >= k && k >= 1 && nsing >= 0, "need m >= k >= 1, nsing >= 0");
  CriterionVerdict v;
  v.id = CriterionId::Ci1;
  add_params(v, {{"m", m}, {"k", k}, {"|Sing(Y)|", nsing}});
  v.inequalities.push_back(
      ineq("|Sing(Y)| <= (m+k-2)(2m+k-6)/5", Q(nsing), "<=", frac(static_cast<long>(m + k - 2) * (2 * m + k - 6), 5)));
  v.inequalities.push_back(ineq("m >= 7", Q(m), ">=", Q(7)));
  return finish(std::move(v), 2 * m + k - 6);
}

CriterionVerdict app_ci2(int m, int k, long nsing) {
  require(m >= k && k >= 1 && nsing >= 0, "need m >= k >= 1, nsing >= 0");
  CriterionVerdict v;
  v.id = CriterionId::Ci2;
  add_params(v, {{"m", m}, {"k", k}, {"|Sing(Y)|", nsing}});
  v.inequalities.push_back(
      ineq("|Sing(Y)| <= (2m+k-3)(m+k-2)/3", Q(nsing), "<=", frac(static_cast<long>(2 * m + k - 3) * (m + k - 2), 3)));
  v.inequalities.push_back(ineq("m >= k+6", Q(m), ">=", Q(k + 6)));
  return finish(std::move(v), 2 * m + k - 6);
}

CriterionVerdict app_double_hypersurface(int d, int r, long nsing) {
  require(d >= 2 && 2 * r >= d && nsing >= 0, "need d >= 2, 2r >= d, nsing >= 0");
  CriterionVerdict v;
  v.id = CriterionId::DoubleHypersurface;
  add_params(v, {{"d", d}, {"r", r}, {"|Sing(R)|", nsing}});
  v.inequalities.push_back(
      ineq("|Sing(R)| <= (2r+d-2)r/2", Q(nsing), "<=", frac(static_cast<long>(2 * r + d - 2) * r, 2)));
  v.inequalities.push_back(ineq("r >= d+7", Q(r), ">=", Q(d + 7)));
  return finish(std::move(v), 3 * r + d - 5);
}

NodalFormWitness NodalFormWitness::make(const HomoPoly<Fp>& f, Fp scale, HomoPoly<Fp> g1, HomoPoly<Fp> gr,
                                        HomoPoly<Fp> rest) {
  if (is_zero(scale)) throw Error(ErrorCode::BadCertificate, "zero scale");
  if (g1.degree() != 1 || g1.is_zero()) throw Error(ErrorCode::BadCertificate, "g_1 must be a nonzero linear form");
  if (!(gr * gr - g1 * rest == scale * f)) {
    throw Error(ErrorCode::BadCertificate, "g_r^2 - g_1 g_{2r-1} does not reproduce the surface");
  }
  return NodalFormWitness(scale, std::move(g1), std::move(gr), std::move(rest));
}

std::vector<HomoPoly<Fp>> candidate_planes(const PointSet<Fp>& sing, std::size_t threshold) {
  const auto& field = sing.field();
  const std::size_t n = sing.size();
  std::vector<HomoPoly<Fp>> out;
  std::vector<PointMask> masks;
  std::set<ProjPoint<Fp>> seen;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const bool covered = std::any_of(masks.begin(), masks.end(),
                                         [&](const PointMask& m) { return m[i] && m[j] && m[k]; });
        if (covered) continue;
        const std::vector<ProjPoint<Fp>> triple{sing[i], sing[j], sing[k]};
        const Matrix<Fp> kernel = nullspace(coordinate_matrix(std::span<const ProjPoint<Fp>>(triple)), field);
        if (kernel.cols() != 1) continue;
        std::vector<Fp> c(kernel.col(0).data(), kernel.col(0).data() + 4);
        const ProjPoint<Fp> plane = ProjPoint<Fp>::from_coords(c);
        if (!seen.insert(plane).second) continue;
        const HomoPoly<Fp> l = HomoPoly<Fp>::linear(plane.coords(), field);
        PointMask mask(n);
        for (std::size_t q = 0; q < n; ++q)
          if (is_zero(eval(l, sing[q].coords()))) mask.set(q);
        masks.push_back(mask);
        if (mask.count() >= threshold) out.push_back(l);
      }
  return out;
}

namespace {

std::optional<NodalFormWitness> try_plane(const HomoPoly<Fp>& f, const HomoPoly<Fp>& l) {
  const auto lead = l.leading_index();
  if (!lead) return std::nullopt;
  const int chart = static_cast<int>(*lead);
  const HomoPoly<Fp> restricted = restrict_to_plane(f, l, chart);
  Fp scale = f.field().one();
  auto sq = poly_sqrt(restricted);
  if (sq.reason == SqrtFailure::LeadingCoeffNotSquare) {
    scale = inverse(restricted.coeff(*restricted.leading_index()));
    sq = poly_sqrt(scale * restricted);
  }
  if (!sq.root) return std::nullopt;
  std::vector<int> positions;
  for (int v = 0; v < f.nvars(); ++v)
    if (v != chart) positions.push_back(v);
  const HomoPoly<Fp> gr = embed(*sq.root, f.nvars(), std::span<const int>(positions));
  const auto rest = divide_by_linear(gr * gr - scale * f, l);
  if (!rest) return std::nullopt;
  return NodalFormWitness::make(f, scale, l, gr, *rest);
}

}  // namespace

std::optional<NodalFormWitness> detect_nodal_surface_form(const HomoPoly<Fp>& f, const PointSet<Fp>& sing,
                                                          const DetectOptions& opts) {
  if (f.nvars() != 4) throw Error(ErrorCode::WrongAmbient, "surface must live in P^3");
  if (f.degree() % 2 != 0 || f.degree() < 2) throw Error(ErrorCode::DegreeMismatch, "surface degree must be even");
  const std::size_t r = static_cast<std::size_t>(f.degree() / 2);
  std::vector<HomoPoly<Fp>> planes = candidate_planes(sing, 2 * r);
  for (const auto& l : opts.extra_planes) planes.push_back(l);
  for (const auto& l : planes)
    if (auto w = try_plane(f, l)) return w;
  if (opts.exhaustive_planes) {
    if (f.field().p() > 31) throw Error(ErrorCode::TooLarge, "exhaustive plane search is limited to p <= 31");
    const ProjectiveRange dual(3, f.field().p());
    for (std::uint64_t i = 0; i < dual.size(); ++i) {
      const ProjPoint<Fp> c = dual.at(i);
      if (auto w = try_plane(f, HomoPoly<Fp>::linear(c.coords(), f.field()))) return w;
    }
  }
  return std::nullopt;
}

std::string hong_park_status_name(HongParkStatus s) {
  switch (s) {
    case HongParkStatus::Factorial: return "factorial";
    case HongParkStatus::NonfactorialStructured: return "nonfactorial_structured";
    case HongParkStatus::NonfactorialUnstructured: return "nonfactorial_unstructured";
    case HongParkStatus::OutOfRange: return "out_of_range";
    case HongParkStatus::Unknown: return "unknown";
  }
  return "unknown";
}

HongParkVerdict hong_park_classify(const HomoPoly<Fp>& f, int r, const ScanOptions& scan, const DetectOptions& detect) {
  if (r < 2) throw Error(ErrorCode::BadParams, "need r >= 2");
  if (f.nvars() != 4) throw Error(ErrorCode::WrongAmbient, "surface must live in P^3");
  if (f.degree() != 2 * r) {
    throw Error(ErrorCode::DegreeMismatch,
                "surface has degree " + std::to_string(f.degree()) + ", expected 2r = " + std::to_string(2 * r));
  }
  HongParkVerdict v;
  v.r = r;
  const NodalInstance inst = analyze_hypersurface(f, scan);
  v.nsing = inst.sing.size();
  v.nodal = inst.clean;
  v.notes = inst.warnings;
  const std::size_t limit = static_cast<std::size_t>((2 * r - 1) * r + 1);
  if (v.nsing > limit) {
    v.status = HongParkStatus::OutOfRange;
    v.notes.push_back(std::to_string(v.nsing) + " singular points exceed (2r-1)r+1 = " + std::to_string(limit));
    return v;
  }
  if (!inst.clean) {
    v.status = HongParkStatus::Unknown;
    v.notes.push_back("singular points are not all ordinary double points");
    return v;
  }
  v.defect = defect(inst.sing, 3 * r - 4, scan.threads).defect;
  if (*v.defect == 0) {
    v.status = HongParkStatus::Factorial;
    return v;
  }
  v.witness = detect_nodal_surface_form(f, inst.sing, detect);
  if (v.witness) {
    v.status = HongParkStatus::NonfactorialStructured;
  } else {
    v.status = HongParkStatus::NonfactorialUnstructured;
    v.notes.push_back("no witness found among candidate planes");
  }
  return v;
}

}  // namespace factlab
