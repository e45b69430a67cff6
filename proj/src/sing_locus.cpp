#include "factlab/sing_locus.hpp"

#include <stdexcept>

namespace factlab {

CompiledForm::CompiledForm(const HomoPoly<Fp>& f, int stride) : p_(f.field().p()) {
  for (const auto& [m, c] : f.terms()) {
    coeffs_.push_back(c.v);
    starts_.push_back(static_cast<std::uint32_t>(offsets_.size()));
    for (int v = 0; v < m.nvars(); ++v) {
      const int e = m.exponents[static_cast<std::size_t>(v)];
      if (e) offsets_.push_back(static_cast<std::uint32_t>(v * stride + e));
    }
  }
  starts_.push_back(static_cast<std::uint32_t>(offsets_.size()));
}

std::uint64_t CompiledForm::eval(const std::uint64_t* pw) const {
  std::uint64_t acc = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    std::uint64_t term = coeffs_[t];
    for (std::uint32_t k = starts_[t]; k < starts_[t + 1]; ++k) term = term * pw[offsets_[k]] % p_;
    acc += term;
  }
  return acc % p_;
}

void fill_power_table(const std::vector<std::uint32_t>& raw, std::uint32_t p, int stride, std::uint64_t* pw) {
  for (std::size_t v = 0; v < raw.size(); ++v) {
    std::uint64_t* row = pw + v * static_cast<std::size_t>(stride);
    row[0] = 1;
    for (int e = 1; e < stride; ++e) row[e] = row[e - 1] * raw[v] % p;
  }
}

namespace {

using RawPoints = std::vector<std::vector<std::uint32_t>>;

/// Scans P^n(F_p) and keeps the points accepted by `test(pw)`.
template <class Test>
RawPoints scan(int n, std::uint32_t p, int stride, const ScanOptions& opts, const Test& test) {
  const ProjectiveRange range(n, p, opts.cap);
  const auto chunks = parallel_chunks(range.size(), opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    RawPoints found;
    std::vector<std::uint64_t> pw(static_cast<std::size_t>((n + 1) * stride));
    range.for_each_raw(begin, end, [&](const std::vector<std::uint32_t>& raw) {
      fill_power_table(raw, p, stride, pw.data());
      if (test(pw.data())) found.push_back(raw);
    });
    return found;
  });
  RawPoints out;
  for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

PointSet<Fp> to_point_set(const RawPoints& raw, int n, const PrimeField& field) {
  PointSet<Fp> out(n, field);
  for (const auto& r : raw) {
    std::vector<Fp> c(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = Fp{r[i], field.p()};
    out.add(ProjPoint<Fp>::from_coords(std::move(c)));
  }
  return out;
}

void require_scannable(const HomoPoly<Fp>& f) {
  if (f.is_zero()) throw Error(ErrorCode::BadParams, "the zero form has no singular locus");
  if (f.degree() < 2) throw Error(ErrorCode::BadParams, "singular locus needs degree >= 2");
}

}  // namespace

PointSet<Fp> singular_points(const HomoPoly<Fp>& f, const ScanOptions& opts) {
  require_scannable(f);
  const std::uint32_t p = f.field().p();
  if (static_cast<std::uint32_t>(f.degree()) % p == 0) {
    throw Error(ErrorCode::CharDividesDegree,
                "p = " + std::to_string(p) + " divides the degree " + std::to_string(f.degree()));
  }
  const int n = f.nvars() - 1;
  const int stride = f.degree() + 1;
  const CompiledForm whole(f, stride);
  std::vector<CompiledForm> partials;
  for (const auto& g : gradient(f)) partials.emplace_back(g, stride);
  const auto raw = scan(n, p, stride, opts, [&](const std::uint64_t* pw) {
    for (const auto& d : partials)
      if (d.eval(pw) != 0) return false;
    return whole.eval(pw) == 0;
  });
  PointSet<Fp> out = to_point_set(raw, n, f.field());
  // Independent re-check with the generic evaluator.
  for (const auto& pt : out) {
    if (!is_zero(eval(f, pt.coords())) || !all_zero(gradient_at(f, pt.coords()))) {
      throw std::logic_error("singular point failed re-verification");
    }
  }
  return out;
}

PointSet<Fp> ci_singular_points(const HomoPoly<Fp>& f, const HomoPoly<Fp>& g, const ScanOptions& opts) {
  require_scannable(f);
  if (g.is_zero()) throw Error(ErrorCode::BadParams, "the zero form has no singular locus");
  if (g.nvars() != f.nvars()) throw Error(ErrorCode::WrongAmbient, "forms live in different projective spaces");
  const std::uint32_t p = f.field().p();
  const int n = f.nvars() - 1;
  const int stride = std::max(f.degree(), g.degree()) + 1;
  const CompiledForm cf(f, stride), cg(g, stride);
  std::vector<CompiledForm> df, dg;
  for (const auto& h : gradient(f)) df.emplace_back(h, stride);
  for (const auto& h : gradient(g)) dg.emplace_back(h, stride);
  const auto raw = scan(n, p, stride, opts, [&](const std::uint64_t* pw) {
    if (cf.eval(pw) != 0 || cg.eval(pw) != 0) return false;
    std::vector<std::uint64_t> a(df.size()), b(dg.size());
    for (std::size_t i = 0; i < df.size(); ++i) {
      a[i] = df[i].eval(pw);
      b[i] = dg[i].eval(pw);
    }
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (a[i] * b[j] % p != a[j] * b[i] % p) return false;
    return true;
  });
  return to_point_set(raw, n, f.field());
}

PointSet<Fp> common_zeros(const std::vector<HomoPoly<Fp>>& forms, const ScanOptions& opts) {
  if (forms.empty()) throw Error(ErrorCode::TooFew, "common zeros of no forms");
  const auto& field = forms.front().field();
  int stride = 1;
  for (const auto& f : forms) {
    if (f.nvars() != forms.front().nvars()) throw Error(ErrorCode::WrongAmbient, "forms live in different projective spaces");
    stride = std::max(stride, f.degree() + 1);
  }
  std::vector<CompiledForm> compiled;
  for (const auto& f : forms) compiled.emplace_back(f, stride);
  const int n = forms.front().nvars() - 1;
  const auto raw = scan(n, field.p(), stride, opts, [&](const std::uint64_t* pw) {
    for (const auto& c : compiled)
      if (c.eval(pw) != 0) return false;
    return true;
  });
  return to_point_set(raw, n, field);
}

HessianRank::HessianRank(const HomoPoly<Fp>& f) : n_(f.nvars()) {
  require_second_order_characteristic(f.field().characteristic(), f.degree());
  for (int i = 0; i < n_; ++i) {
    const HomoPoly<Fp> fi = partial(f, i);
    second_.emplace_back();
    for (int j = 0; j < n_; ++j) second_.back().push_back(partial(fi, j));
  }
}

std::size_t HessianRank::at(const ProjPoint<Fp>& point) const {
  Matrix<Fp> h(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) h(i, j) = eval(second_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], point.coords());
  return rank(drop_index(h, static_cast<Index>(point.pivot())));
}

bool ci_is_node(const HomoPoly<Fp>& f, const HomoPoly<Fp>& g, const ProjPoint<Fp>& point) {
  const auto& field = f.field();
  const Index skip = static_cast<Index>(point.pivot());
  auto affine = [&](const Vector<Fp>& v) {
    Vector<Fp> out(v.size() - 1);
    for (Index i = 0, k = 0; i < v.size(); ++i)
      if (i != skip) out(k++) = v(i);
    return out;
  };
  const Vector<Fp> df = affine(gradient_at(f, point.coords()));
  const Vector<Fp> dg = affine(gradient_at(g, point.coords()));
  const HomoPoly<Fp>* smooth = &g;
  const HomoPoly<Fp>* other = &f;
  Vector<Fp> base = dg, dother = df;
  if (all_zero(dg)) {
    if (all_zero(df)) return false;
    std::swap(smooth, other);
    std::swap(base, dother);
  }
  Index j = 0;
  while (is_zero(base(j))) ++j;
  const Fp c = dother(j) / base(j);
  if (!all_zero(Vector<Fp>(dother - c * base))) return false;
  const Matrix<Fp> h = drop_index(Matrix<Fp>(second_partials_at(*other, point.coords()) -
                                             c * second_partials_at(*smooth, point.coords())),
                                  skip);
  Matrix<Fp> row(1, base.size());
  row.row(0) = base.transpose();
  const Matrix<Fp> k = nullspace(row, field);
  const Matrix<Fp> restricted = k.transpose() * h * k;
  return static_cast<Index>(rank(restricted)) == base.size() - 1;
}

void verify_nodal(NodalInstance& inst) {
  if (inst.defining.empty() || inst.defining.size() > 2) {
    throw Error(ErrorCode::BadParams, "expected one or two defining forms");
  }
  const auto& f = inst.defining.front();
  int degree = f.degree();
  for (const auto& g : inst.defining) degree = std::max(degree, g.degree());
  require_second_order_characteristic(f.field().characteristic(), degree);
  const int n = inst.ambient_dim;
  inst.node_flags.assign(inst.sing.size(), false);
  if (inst.defining.size() == 1) {
    const HessianRank hr(f);
    for (std::size_t i = 0; i < inst.sing.size(); ++i) {
      inst.node_flags[i] = static_cast<int>(hr.at(inst.sing[i])) == n;
    }
  } else {
    for (std::size_t i = 0; i < inst.sing.size(); ++i) {
      inst.node_flags[i] = ci_is_node(f, inst.defining[1], inst.sing[i]);
    }
  }
  inst.clean = std::all_of(inst.node_flags.begin(), inst.node_flags.end(), [](bool b) { return b; });
  inst.warnings.clear();
  const std::size_t threshold = 5 * static_cast<std::size_t>(degree) * static_cast<std::size_t>(n);
  if (inst.sing.size() > threshold) {
    inst.clean = false;
    inst.warnings.push_back("NotIsolated: " + std::to_string(inst.sing.size()) +
                            " singular points exceed the threshold " + std::to_string(threshold));
  }
}

NodalInstance analyze_hypersurface(const HomoPoly<Fp>& f, const ScanOptions& opts) {
  NodalInstance inst({f}, singular_points(f, opts));
  verify_nodal(inst);
  return inst;
}

NodalInstance analyze_complete_intersection(const HomoPoly<Fp>& f, const HomoPoly<Fp>& g, const ScanOptions& opts) {
  NodalInstance inst({f, g}, ci_singular_points(f, g, opts));
  verify_nodal(inst);
  return inst;
}

}  // namespace factlab
