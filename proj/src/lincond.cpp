#include "factlab/lincond.hpp"

#include "factlab/sing_locus.hpp"

namespace factlab {

namespace {

std::string point_text(const ProjPoint<Fp>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.coords().size(); ++i) s += (i ? ":" : "") + std::to_string(p[i].v);
  return s + ")";
}

}  // namespace

IncidenceCertificate incidence_bound_from_intersection(const PointSet<Fp>& sigma,
                                                       const std::vector<HomoPoly<Fp>>& generators,
                                                       const ScanOptions& opts) {
  if (generators.empty()) throw Error(ErrorCode::TooFew, "no generators");
  const int m = generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != m) throw Error(ErrorCode::DegreeMismatch, "generators of different degrees");
    if (g.nvars() != sigma.ambient_dim() + 1) throw Error(ErrorCode::WrongAmbient, "generator in the wrong ring");
  }
  const PointSet<Fp> zeros = common_zeros(generators, opts);
  std::string extra, missing;
  for (const auto& p : zeros)
    if (!sigma.contains(p)) extra += " " + point_text(p);
  for (const auto& p : sigma)
    if (!zeros.contains(p)) missing += " " + point_text(p);
  if (!extra.empty() || !missing.empty()) {
    std::string msg = "common zero locus differs from the set;";
    if (!extra.empty()) msg += " extra zeros:" + extra + ";";
    if (!missing.empty()) msg += " points not on the locus:" + missing + ";";
    throw Error(ErrorCode::LocusMismatch, msg);
  }
  return {generators, m};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::string scan_status_name(ScanStatus s) {
  switch (s) {
    case ScanStatus::Free: return "free";
    case ScanStatus::BasePoint: return "base_point";
    case ScanStatus::NotScanned: return "not_scanned";
  }
  return "not_scanned";
}

std::pair<std::vector<Fp>, std::vector<Fp>> tangent_frame(const ProjPoint<Fp>& p, const PrimeField& field) {
  std::vector<std::vector<Fp>> frame;
  for (std::size_t j = 0; j < p.coords().size(); ++j) {
    if (j == p.pivot()) continue;
    std::vector<Fp> e(p.coords().size(), field.zero());
    e[j] = field.one();
    frame.push_back(std::move(e));
  }
  return {frame[0], frame[1]};
}

BeseReport bese_check(const PointSet<Fp>& sigma, int xi, const BeseOptions& opts) {
  if (sigma.ambient_dim() != 2) throw Error(ErrorCode::WrongAmbient, "the blow-up criterion is for points of P^2");
  if (xi < 3) throw Error(ErrorCode::XiTooSmall, "xi must be >= 3, got " + std::to_string(xi));
  const auto& field = sigma.field();
  BeseReport rep;
  rep.xi = xi;
  rep.delta = sigma.size();
  const long h = (xi + 3) / 2;
  rep.delta_bound = std::max(h * (xi + 3 - h) - 1, h * h);
  rep.delta_holds = static_cast<long>(rep.delta) <= rep.delta_bound;

  for (int k = 1; 2 * k <= xi + 3; ++k) {
    BeseCondition c;
    c.k = k;
    c.bound = static_cast<long>(k) * (xi + 3 - k) - 2;
    if (k == 1) {
      c.value = sigma.size() < 2 ? sigma.size() : max_on_lines(sigma).count;
      c.exact = true;
      c.source = "exact line count";
    } else if (k == 2 && sigma.size() <= kConicSearchCap) {
      c.value = max_on_conics(sigma).count;
      c.exact = true;
      c.source = "exact conic count";
    } else {
      c.value = sigma.size();
      c.source = "trivial bound |Sigma|";
      if (opts.incidence && opts.incidence->bound(k) < *c.value) {
        c.value = opts.incidence->bound(k);
        c.source = "intersection certificate";
      }
    }
    if (static_cast<long>(*c.value) <= c.bound) {
      c.holds = Verdict::Yes;
    } else {
      c.holds = c.exact ? Verdict::No : Verdict::Unknown;
    }
    rep.conditions.push_back(c);
  }
  rep.hypotheses_hold = rep.delta_holds ? Verdict::Yes : Verdict::No;
  for (const auto& c : rep.conditions) {
    if (c.holds == Verdict::No) rep.hypotheses_hold = Verdict::No;
    if (c.holds == Verdict::Unknown && rep.hypotheses_hold == Verdict::Yes) rep.hypotheses_hold = Verdict::Unknown;
  }
  if (!opts.run_scan) return rep;

  const auto basis = monomial_basis(3, xi);
  RowSpace<Fp> space(static_cast<Index>(basis.size()));
  for (const auto& p : sigma) space.insert(monomial_values(p.coords(), basis, xi, field));

  const ProjectiveRange plane(2, field.p(), opts.scan.cap);
  const ProjectiveRange line(1, field.p(), opts.scan.cap);
  const auto chunks = parallel_chunks(plane.size(), opts.scan.threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::optional<BeseWitness> found;
    for (std::uint64_t i = begin; i < end && !found; ++i) {
      const ProjPoint<Fp> q = plane.at(i);
      const auto at = sigma.index_of(q);
      if (!at) {
        if (space.contains(monomial_values(q.coords(), basis, xi, field))) found = BeseWitness{q, std::nullopt, std::nullopt};
        continue;
      }
      const auto [u, v] = tangent_frame(q, field);
      for (std::uint64_t t = 0; t < line.size() && !found; ++t) {
        const ProjPoint<Fp> ab = line.at(t);
        std::vector<Fp> dir(3);
        for (std::size_t c = 0; c < 3; ++c) dir[c] = ab[0] * u[c] + ab[1] * v[c];
        if (space.contains(directional_values(q.coords(), std::span<const Fp>(dir), basis, xi, field))) {
          found = BeseWitness{q, *at, dir};
        }
      }
    }
    return found;
  });
  rep.scan = ScanStatus::Free;
  for (const auto& c : chunks) {
    if (c) {
      rep.scan = ScanStatus::BasePoint;
      rep.witness = c;
      break;
    }
  }
  return rep;
}

}  // namespace factlab
