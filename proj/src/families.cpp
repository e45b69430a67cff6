#include "factlab/families.hpp"

#include <algorithm>
#include <set>

#include "factlab/lincond.hpp"

namespace factlab {

namespace {

int arithmetic_genus(int e) { return (e - 1) * (e - 2) / 2; }

/// Random nonzero combination of the columns of `basis`.
std::optional<std::vector<Fp>> random_combination(const Matrix<Fp>& basis, const PrimeField& field, SplitMix64& rng) {
  if (basis.cols() == 0) return std::nullopt;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector<Fp> v = zero_vector<Fp>(basis.rows(), field);
    for (Index c = 0; c < basis.cols(); ++c) v += random_scalar(field, rng) * basis.col(c);
    if (!all_zero(v)) return std::vector<Fp>(v.data(), v.data() + v.size());
  }
  return std::nullopt;
}

/// Random form in `nvars` variables with every monomial supported on the
/// listed variables set to zero.
HomoPoly<Fp> random_off_support(int nvars, int degree, const std::vector<int>& support, const PrimeField& field,
                                SplitMix64& rng) {
  HomoPoly<Fp> h(nvars, degree, field);
  for (const auto& mono : monomial_basis(nvars, degree)) {
    bool inside = true;
    for (int v = 0; v < nvars; ++v) {
      const bool listed = std::find(support.begin(), support.end(), v) != support.end();
      if (!listed && mono.exponents[static_cast<std::size_t>(v)] > 0) inside = false;
    }
    const Fp c = random_scalar(field, rng);
    if (!inside) h.set_coeff(mono, c);
  }
  return h;
}

HomoPoly<Fp> random_form(int nvars, int degree, const PrimeField& field, SplitMix64& rng) {
  return random_homo(nvars, degree, field, rng.next());
}

Matrix<Fp> random_invertible(int n, const PrimeField& field, SplitMix64& rng) {
  while (true) {
    Matrix<Fp> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = random_scalar(field, rng);
    if (static_cast<int>(rank(m)) == n) return m;
  }
}

std::vector<ProjPoint<Fp>> pick(const std::vector<ProjPoint<Fp>>& pool, std::size_t count, SplitMix64& rng) {
  std::vector<ProjPoint<Fp>> v = pool;
  for (std::size_t i = 0; i < count && i < v.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(v.size() - i));
    std::swap(v[i], v[j]);
  }
  v.erase(v.begin() + static_cast<long>(std::min(count, v.size())), v.end());
  return v;
}

/// A form of degree `degree` through chosen points of the curve whose zeros
/// on the curve are exactly `count` distinct usable points.
std::optional<HomoPoly<Fp>> curve_section(const RationalCurve& curve, std::size_t chosen, std::size_t count, int degree,
                                          const PrimeField& field, SplitMix64& rng) {
  if (curve.good_points.size() < count) return std::nullopt;
  for (int attempt = 0; attempt < 20; ++attempt) {
    const auto g = random_form_through(pick(curve.good_points, chosen, rng), degree, field, rng);
    if (!g) continue;
    std::size_t zeros = 0;
    for (const auto& q : curve.good_points) zeros += is_zero(eval(*g, q.coords())) ? 1 : 0;
    if (zeros == count) return g;
  }
  return std::nullopt;
}

std::string attempt_note(std::uint64_t seed, const NodalInstance& inst, std::size_t expected) {
  return "seed " + std::to_string(seed) + ": observed " + std::to_string(inst.sing.size()) + " singular points (expected " +
         std::to_string(expected) + ")" + (inst.clean ? "" : ", not all ordinary double points");
}

template <class Draw>
FamilyInstance retry(const FamilySpec& spec, std::size_t expected, Draw draw) {
  std::string log;
  for (int a = 0; a < std::max(1, spec.max_retries); ++a) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(a);
    SplitMix64 rng(seed);
    std::string why;
    auto result = draw(rng, why);
    if (result) {
      const NodalInstance& inst = result->first;
      if (inst.sing.size() == expected && inst.clean) {
        return FamilyInstance{inst, seed, expected, std::move(result->second)};
      }
      why = attempt_note(seed, inst, expected);
    } else {
      why = "seed " + std::to_string(seed) + ": " + why;
    }
    log += (log.empty() ? "" : "; ") + why;
  }
  throw Error(ErrorCode::DegenerateDraw, family_name(spec.family) + " draw failed after " +
                                             std::to_string(std::max(1, spec.max_retries)) + " seeds: " + log);
}

using Draw = std::optional<std::pair<NodalInstance, std::vector<std::pair<std::string, HomoPoly<Fp>>>>>;

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::DoubleSolid: return "double_solid_eq15";
    case Family::Hypersurface: return "hypersurface_xgyf";
    case Family::CiPlane: return "ci_plane";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::DoubleSolid, Family::Hypersurface, Family::CiPlane})
    if (family_name(f) == name) return f;
  throw Error(ErrorCode::BadParams, "unknown family '" + name + "'");
}

std::size_t expected_node_count(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::DoubleSolid: return static_cast<std::size_t>((2 * spec.r - 1) * spec.r);
    case Family::Hypersurface: return static_cast<std::size_t>((spec.d - 1) * (spec.d - 1));
    case Family::CiPlane: {
      const int s = spec.m + spec.k - 2;
      return static_cast<std::size_t>(s * s - (spec.m - 1) * (spec.k - 1));
    }
  }
  return 0;
}

std::optional<RationalCurve> random_rational_curve(int e, const PrimeField& field, SplitMix64& rng) {
  std::vector<HomoPoly<Fp>> phi;
  for (int i = 0; i < 3; ++i) phi.push_back(random_form(2, e, field, rng));
  const ProjectiveRange line(1, field.p());
  std::vector<std::optional<ProjPoint<Fp>>> images;
  PointSet<Fp> image_set(2, field);
  for (std::uint64_t t = 0; t < line.size(); ++t) {
    const ProjPoint<Fp> s = line.at(t);
    std::vector<Fp> c;
    bool nonzero = false;
    for (const auto& g : phi) {
      c.push_back(eval(g, s.coords()));
      nonzero = nonzero || !is_zero(c.back());
    }
    if (!nonzero) {
      images.emplace_back();
      continue;
    }
    images.push_back(ProjPoint<Fp>::from_coords(c));
    image_set.insert(*images.back());
  }
  if (image_set.size() < basis_size(3, e)) return std::nullopt;
  const auto basis = monomial_basis(3, e);
  Matrix<Fp> rows(static_cast<Index>(image_set.size()), static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < image_set.size(); ++i)
    rows.row(static_cast<Index>(i)) = monomial_values(image_set[i].coords(), basis, e, field).transpose();
  const Matrix<Fp> kernel = nullspace(rows, field);
  if (kernel.cols() != 1) return std::nullopt;
  HomoPoly<Fp> equation(3, e, field, std::vector<Fp>(kernel.col(0).data(), kernel.col(0).data() + kernel.rows()));
  std::map<ProjPoint<Fp>, int> hits;
  for (const auto& img : images)
    if (img) ++hits[*img];
  RationalCurve curve{phi, equation, {}};
  for (const auto& img : images) {
    if (!img || hits[*img] != 1) continue;
    if (all_zero(gradient_at(equation, img->coords()))) continue;
    curve.good_points.push_back(*img);
  }
  return curve;
}

std::optional<HomoPoly<Fp>> random_form_through(const std::vector<ProjPoint<Fp>>& points, int degree,
                                                const PrimeField& field, SplitMix64& rng) {
  const int nvars = points.empty() ? 3 : points.front().ambient_dim() + 1;
  const auto basis = monomial_basis(nvars, degree);
  Matrix<Fp> rows(static_cast<Index>(points.size()), static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    rows.row(static_cast<Index>(i)) = monomial_values(points[i].coords(), basis, degree, field).transpose();
  const auto c = random_combination(nullspace(rows, field), field, rng);
  if (!c) return std::nullopt;
  return HomoPoly<Fp>(nvars, degree, field, *c);
}

HomoPoly<Fp> random_form_singular_at(const std::vector<ProjPoint<Fp>>& points, int nvars, int degree,
                                     const PrimeField& field, SplitMix64& rng) {
  const auto basis = monomial_basis(nvars, degree);
  std::vector<Vector<Fp>> conds;
  for (const auto& p : points) {
    conds.push_back(monomial_values(p.coords(), basis, degree, field));
    for (int i = 0; i < nvars; ++i) {
      std::vector<Fp> dir(static_cast<std::size_t>(nvars), field.zero());
      dir[static_cast<std::size_t>(i)] = field.one();
      conds.push_back(directional_values(p.coords(), std::span<const Fp>(dir), basis, degree, field));
    }
  }
  Matrix<Fp> rows(static_cast<Index>(conds.size()), static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < conds.size(); ++i) rows.row(static_cast<Index>(i)) = conds[i].transpose();
  const auto c = random_combination(nullspace(rows, field), field, rng);
  if (!c) throw Error(ErrorCode::DegenerateDraw, "no form of this degree is singular at all the points");
  return HomoPoly<Fp>(nvars, degree, field, *c);
}

FamilyInstance gen_double_solid_nonfactorial(const FamilySpec& spec) {
  const int r = spec.r;
  if (r < 2) throw Error(ErrorCode::BadParams, "need r >= 2");
  if (spec.p <= static_cast<std::uint32_t>(2 * r)) throw Error(ErrorCode::CharTooSmall, "need p > 2r");
  const PrimeField field(spec.p);
  const std::size_t expected = expected_node_count(spec);
  return retry(spec, expected, [&](SplitMix64& rng, std::string& why) -> Draw {
    const Matrix<Fp> m = random_invertible(4, field, rng);
    const auto curve = random_rational_curve(r, field, rng);
    if (!curve) {
      why = "degenerate plane curve";
      return std::nullopt;
    }
    const std::size_t n = static_cast<std::size_t>((2 * r - 1) * r - arithmetic_genus(r));
    const auto through = curve_section(*curve, n, expected, 2 * r - 1, field, rng);
    if (!through) {
      why = "no section of the plane curve with distinct rational zeros";
      return std::nullopt;
    }
    const std::vector<int> plane_vars{1, 2, 3};
    const HomoPoly<Fp> u0 = HomoPoly<Fp>::variable(4, 0, field);
    const HomoPoly<Fp> gr_u = embed(curve->equation, 4, std::span<const int>(plane_vars)) + u0 * random_form(4, r - 1, field, rng);
    const HomoPoly<Fp> gs_u = embed(*through, 4, std::span<const int>(plane_vars)) + u0 * random_form(4, 2 * r - 2, field, rng);
    const HomoPoly<Fp> g1 = linear_change(u0, m);
    const HomoPoly<Fp> gr = linear_change(gr_u, m);
    const HomoPoly<Fp> gs = linear_change(gs_u, m);
    const HomoPoly<Fp> f = gr * gr - g1 * gs;
    std::vector<std::pair<std::string, HomoPoly<Fp>>> parts{{"g1", g1}, {"g_r", gr}, {"g_2r-1", gs}};
    return std::make_pair(analyze_hypersurface(f, spec.scan), std::move(parts));
  });
}

FamilyInstance gen_hypersurface_nonfactorial(const FamilySpec& spec) {
  const int d = spec.d;
  if (d < 3) throw Error(ErrorCode::BadParams, "need d >= 3");
  const PrimeField field(spec.p);
  const std::size_t expected = expected_node_count(spec);
  return retry(spec, expected, [&](SplitMix64& rng, std::string& why) -> Draw {
    const auto curve = random_rational_curve(d - 1, field, rng);
    if (!curve) {
      why = "degenerate plane curve";
      return std::nullopt;
    }
    const std::size_t n = static_cast<std::size_t>((d - 1) * (d - 1) - arithmetic_genus(d - 1));
    const auto through = curve_section(*curve, n, expected, d - 1, field, rng);
    if (!through) {
      why = "no section of the plane curve with distinct rational zeros";
      return std::nullopt;
    }
    const std::vector<int> plane_vars{2, 3, 4};
    const HomoPoly<Fp> x = HomoPoly<Fp>::variable(5, 0, field);
    const HomoPoly<Fp> y = HomoPoly<Fp>::variable(5, 1, field);
    const HomoPoly<Fp> f = embed(curve->equation, 5, std::span<const int>(plane_vars)) +
                           x * random_form(5, d - 2, field, rng) + y * random_form(5, d - 2, field, rng);
    const HomoPoly<Fp> g = embed(*through, 5, std::span<const int>(plane_vars)) + x * random_form(5, d - 2, field, rng) +
                           y * random_form(5, d - 2, field, rng);
    const HomoPoly<Fp> v = x * g + y * f;
    std::vector<std::pair<std::string, HomoPoly<Fp>>> parts{{"g", g}, {"f", f}};
    return std::make_pair(analyze_hypersurface(v, spec.scan), std::move(parts));
  });
}

FamilyInstance gen_ci_nonfactorial(const FamilySpec& spec) {
  const int m = spec.m, k = spec.k;
  if (k < 2 || m < k) throw Error(ErrorCode::BadParams, "need m >= k >= 2");
  const PrimeField field(spec.p);
  const std::size_t expected = expected_node_count(spec);
  const int ma = m - 1, kb = k - 1, e = ma + kb;
  const std::vector<int> plane_vars{3, 4, 5};
  return retry(spec, expected, [&](SplitMix64& rng, std::string& why) -> Draw {
    // On the plane, the nodes are where the rows a (degree m-1) and b
    // (degree k-1) of a 2 x 3 matrix become proportional. Build that matrix
    // from the syzygies of the forms of degree m+k-2 through the chosen
    // points, so the degeneracy locus is exactly those points.
    std::vector<HomoPoly<Fp>> a, b;
    if (ma - kb <= 1) {
      const std::size_t n = expected;
      const PointSet<Fp> pts = random_point_set(2, n, field, rng.next());
      const auto basis = monomial_basis(3, e);
      Matrix<Fp> rows(static_cast<Index>(n), static_cast<Index>(basis.size()));
      for (std::size_t i = 0; i < n; ++i)
        rows.row(static_cast<Index>(i)) = monomial_values(pts[i].coords(), basis, e, field).transpose();
      const Matrix<Fp> ideal = nullspace(rows, field);
      if (ideal.cols() != 3) {
        why = "points do not have the expected Hilbert function";
        return std::nullopt;
      }
      std::vector<HomoPoly<Fp>> q;
      for (Index c = 0; c < 3; ++c) q.emplace_back(3, e, field, std::vector<Fp>(ideal.col(c).data(), ideal.col(c).data() + ideal.rows()));
      auto syzygies = [&](int deg) {
        const auto mono = monomial_basis(3, deg);
        const std::size_t w = mono.size();
        const std::size_t out = basis_size(3, e + deg);
        Matrix<Fp> sys = zero_matrix<Fp>(static_cast<Index>(out), static_cast<Index>(3 * w), field);
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < w; ++j) {
            HomoPoly<Fp> t(3, deg, field);
            t.set_coeff(mono[j], field.one());
            const HomoPoly<Fp> prod = q[i] * t;
            for (std::size_t c = 0; c < out; ++c) sys(static_cast<Index>(c), static_cast<Index>(i * w + j)) = prod.coeff(c);
          }
        return std::make_pair(nullspace(sys, field), w);
      };
      auto split = [&](const std::vector<Fp>& v, std::size_t w, int deg) {
        std::vector<HomoPoly<Fp>> s;
        for (std::size_t i = 0; i < 3; ++i)
          s.emplace_back(3, deg, field, std::vector<Fp>(v.begin() + static_cast<long>(i * w), v.begin() + static_cast<long>((i + 1) * w)));
        return s;
      };
      const auto [sa, wa] = syzygies(ma);
      const auto [sb, wb] = syzygies(kb);
      const auto va = random_combination(sa, field, rng);
      const auto vb = random_combination(sb, field, rng);
      if (!va || !vb) {
        why = "missing syzygies";
        return std::nullopt;
      }
      a = split(*va, wa, ma);
      b = split(*vb, wb, kb);
    } else {
      for (int i = 0; i < 3; ++i) {
        a.push_back(random_form(3, ma, field, rng));
        b.push_back(random_form(3, kb, field, rng));
      }
    }
    HomoPoly<Fp> f(6, m, field), g(6, k, field);
    for (int i = 0; i < 3; ++i) {
      const HomoPoly<Fp> xi = HomoPoly<Fp>::variable(6, i, field);
      f += xi * (embed(a[static_cast<std::size_t>(i)], 6, std::span<const int>(plane_vars)) +
                 random_off_support(6, ma, plane_vars, field, rng));
      g += xi * (embed(b[static_cast<std::size_t>(i)], 6, std::span<const int>(plane_vars)) +
                 random_off_support(6, kb, plane_vars, field, rng));
    }
    if (spec.check_smooth) {
      if (!singular_points(f, spec.scan).empty() || !singular_points(g, spec.scan).empty()) {
        why = "F or G is singular";
        return std::nullopt;
      }
    }
    std::vector<std::pair<std::string, HomoPoly<Fp>>> parts{{"F", f}, {"G", g}};
    return std::make_pair(analyze_complete_intersection(f, g, spec.scan), std::move(parts));
  });
}

FamilyInstance generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::DoubleSolid: return gen_double_solid_nonfactorial(spec);
    case Family::Hypersurface: return gen_hypersurface_nonfactorial(spec);
    case Family::CiPlane: return gen_ci_nonfactorial(spec);
  }
  throw Error(ErrorCode::BadParams, "unknown family");
}

}  // namespace factlab
