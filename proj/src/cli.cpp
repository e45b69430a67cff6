#include "factlab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <ostream>

#include "factlab/criteria.hpp"
#include "factlab/families.hpp"
#include "factlab/io.hpp"
#include "factlab/lincond.hpp"
#include "factlab/sing_locus.hpp"

namespace factlab {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string field_text;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::uint64_t scan_cap = kDefaultScanCap;
  std::string output;

  ScanOptions scan() const { return {threads, scan_cap}; }
};

/// Field of a file: its header, unless --field says otherwise.
FieldSpec resolve_field(const RunConfig& cfg, const std::optional<FieldSpec>& header) {
  if (header) {
    if (!cfg.field_text.empty() && !(FieldSpec::parse(cfg.field_text) == *header)) {
      throw Error(ErrorCode::FieldMismatch, "--field " + cfg.field_text + " conflicts with the file's " + header->to_string());
    }
    return *header;
  }
  return FieldSpec::parse(cfg.field_text.empty() ? "Fp:101" : cfg.field_text);
}

PrimeField prime_field(const FieldSpec& spec, const std::string& command) {
  if (spec.kind != FieldSpec::Kind::Prime) throw Error(ErrorCode::BadField, command + " needs a prime field");
  return PrimeField(spec.p);
}

template <class S>
Json points_json(const PointSet<S>& set) {
  Json a = Json::array();
  for (const auto& p : set) a.push_back(format_point(p, set.field()));
  return a;
}

Json verdict_json(const CriterionVerdict& v) {
  Json j;
  j["criterion"] = criterion_name(v.id);
  j["applies"] = v.applies;
  j["certified_degree"] = v.certified_degree ? Json(*v.certified_degree) : Json(nullptr);
  Json params = Json::object();
  for (const auto& [k, val] : v.parameters) params[k] = val;
  j["parameters"] = params;
  Json ineqs = Json::array();
  for (const auto& i : v.inequalities) ineqs.push_back({{"text", i.text}, {"instantiated", i.instantiated}, {"holds", i.holds}});
  j["inequalities"] = ineqs;
  j["conditional"] = v.conditional;
  j["notes"] = v.notes;
  return j;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void operator()(const Json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (cfg_.output.empty() || cfg_.output == "-") {
      out_ << text;
    } else {
      write_file(cfg_.output, text);
    }
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

void cmd_sing(const RunConfig& cfg, const std::string& path, const std::string& nodes_out, const Emitter& emit) {
  const std::string text = read_file(path);
  const PrimeField field = prime_field(resolve_field(cfg, split_poly_file(text).field), "sing");
  const auto polys = parse_poly_file(text, field);
  if (polys.size() > 2) throw Error(ErrorCode::BadParams, "expected one or two polynomials");
  const NodalInstance inst = polys.size() == 1 ? analyze_hypersurface(polys[0], cfg.scan())
                                               : analyze_complete_intersection(polys[0], polys[1], cfg.scan());
  if (!nodes_out.empty()) write_file(nodes_out, format_points(inst.sing));
  Json j;
  j["command"] = "sing";
  j["field"] = field.spec().to_string();
  j["ambient_dim"] = inst.ambient_dim;
  Json degrees = Json::array();
  for (const auto& f : polys) degrees.push_back(f.degree());
  j["degrees"] = degrees;
  j["count"] = inst.sing.size();
  j["nodes"] = points_json(inst.sing);
  j["node_flags"] = inst.node_flags;
  j["clean"] = inst.clean;
  j["warnings"] = inst.warnings;
  j["evidence"] = "mod-p evidence";
  emit(j);
}

template <class F>
void cmd_defect_over(const RunConfig& cfg, const std::string& text, int xi, const F& field, const Emitter& emit) {
  const auto sigma = parse_points(text, field);
  const auto r = defect(sigma, xi, cfg.threads);
  Json j;
  j["command"] = "defect";
  j["field"] = field.spec().to_string();
  j["size"] = r.size;
  j["rank"] = r.rank;
  j["defect"] = r.defect;
  j["xi"] = r.xi;
  Json dep = Json::array();
  for (const auto& p : r.dependent_points) dep.push_back(format_point(p, field));
  j["dependent_points"] = dep;
  emit(j);
}

template <class F>
void cmd_separator_over(const std::string& text, int xi, std::size_t index, const F& field, const Emitter& emit) {
  const auto sigma = parse_points(text, field);
  if (index >= sigma.size()) throw Error(ErrorCode::NotInSet, "point index " + std::to_string(index) + " out of range");
  const auto result = separator(sigma, sigma[index], xi);
  Json j;
  j["command"] = "separator";
  j["field"] = field.spec().to_string();
  j["size"] = sigma.size();
  j["xi"] = xi;
  j["index"] = index;
  j["point"] = format_point(sigma[index], field);
  using S = typename F::Scalar;
  if (const auto* cert = std::get_if<SeparatorCertificate<S>>(&result)) {
    j["certificate"] = {{"point", format_point(cert->point(), field)}, {"form_text", format_poly(cert->form())}};
  } else {
    const auto& fail = std::get<SeparationFailure<S>>(result);
    Json comb = Json::array();
    for (const auto& [i, c] : fail.combination) {
      comb.push_back({{"index", i}, {"point", format_point(sigma[i], field)}, {"coefficient", coefficient_text(field, c)}});
    }
    j["failure"] = {{"point", format_point(fail.point, field)}, {"combination", comb}};
  }
  emit(j);
}

void cmd_bese(const RunConfig& cfg, const std::string& path, int xi, bool no_scan, const Emitter& emit) {
  const std::string text = read_file(path);
  const PrimeField field = prime_field(resolve_field(cfg, read_point_header(text).field), "bese");
  const auto sigma = parse_points(text, field);
  BeseOptions opts;
  opts.scan = cfg.scan();
  opts.run_scan = !no_scan;
  const BeseReport rep = bese_check(sigma, xi, opts);
  Json j;
  j["command"] = "bese";
  j["field"] = field.spec().to_string();
  j["xi"] = rep.xi;
  j["delta"] = rep.delta;
  j["delta_bound"] = rep.delta_bound;
  j["delta_holds"] = rep.delta_holds;
  Json conds = Json::array();
  for (const auto& c : rep.conditions) {
    conds.push_back({{"k", c.k},
                     {"bound", c.bound},
                     {"value", c.value ? Json(*c.value) : Json(nullptr)},
                     {"exact", c.exact},
                     {"source", c.source},
                     {"holds", verdict_name(c.holds)}});
  }
  j["conditions"] = conds;
  j["hypotheses_hold"] = verdict_name(rep.hypotheses_hold);
  Json scan;
  scan["status"] = scan_status_name(rep.scan);
  scan["label"] = rep.scan_label;
  if (rep.witness) {
    Json w;
    w["point"] = format_point(rep.witness->point, field);
    w["sigma_index"] = rep.witness->sigma_index ? Json(*rep.witness->sigma_index) : Json(nullptr);
    if (rep.witness->direction) {
      std::string d;
      for (std::size_t i = 0; i < rep.witness->direction->size(); ++i) d += (i ? "," : "") + field.format((*rep.witness->direction)[i]);
      w["direction"] = d;
    } else {
      w["direction"] = nullptr;
    }
    scan["witness"] = w;
  } else {
    scan["witness"] = nullptr;
  }
  j["scan_result"] = scan;
  emit(j);
}

void cmd_classify(const RunConfig& cfg, const std::string& path, int r, bool exhaustive, const Emitter& emit) {
  const std::string text = read_file(path);
  const PrimeField field = prime_field(resolve_field(cfg, split_poly_file(text).field), "classify");
  const auto polys = parse_poly_file(text, field);
  if (polys.size() != 1) throw Error(ErrorCode::BadParams, "expected exactly one polynomial");
  DetectOptions detect;
  detect.exhaustive_planes = exhaustive;
  const HongParkVerdict v = hong_park_classify(polys[0], r, cfg.scan(), detect);
  Json j;
  j["command"] = "classify";
  j["field"] = field.spec().to_string();
  j["r"] = v.r;
  j["status"] = hong_park_status_name(v.status);
  j["nsing"] = v.nsing;
  j["nodal"] = v.nodal;
  j["xi"] = 3 * r - 4;
  j["defect"] = v.defect ? Json(*v.defect) : Json(nullptr);
  if (v.witness) {
    j["witness"] = {{"scale", field.format(v.witness->scale())},
                    {"g1", format_poly(v.witness->g1())},
                    {"g_r", format_poly(v.witness->gr())},
                    {"g_2r-1", format_poly(v.witness->rest())}};
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = v.notes;
  j["evidence"] = v.evidence;
  emit(j);
}

struct CriteriaArgs {
  std::string theorem;
  int n = -1, lambda = -1, xi = -1, r = -1, eps = 0, d = -1, m = -1, k = -1;
  long size = -1, nsing = -1;
  bool incidence_certified = false;
};

void cmd_criteria(const CriteriaArgs& a, const Emitter& emit) {
  auto need = [](long v, const char* name) {
    if (v < 0) throw Error(ErrorCode::BadParams, std::string("missing --") + name);
    return v;
  };
  Json j;
  if (a.theorem == "main") {
    const int n = static_cast<int>(need(a.n, "n")), lambda = static_cast<int>(need(a.lambda, "lambda"));
    const long size = need(a.size, "size");
    const int xi = static_cast<int>(need(a.xi, "xi"));
    j = verdict_json(theorem_main_certify(n, lambda, size, xi));
    Json all = Json::array();
    for (const auto& v : theorem_main_bullets(n, lambda, size, xi)) all.push_back(verdict_json(v));
    j["bullets"] = all;
  } else if (a.theorem == "prop_3r4") {
    j = verdict_json(prop_3r4_certify(static_cast<int>(need(a.r, "r")), a.eps, need(a.size, "size"), a.incidence_certified));
  } else if (a.theorem == "double_solid") {
    j = verdict_json(app_double_solid(static_cast<int>(need(a.r, "r")), need(a.nsing, "nsing")));
  } else if (a.theorem == "hypersurface") {
    j = verdict_json(app_hypersurface(static_cast<int>(need(a.d, "d")), need(a.nsing, "nsing")));
  } else if (a.theorem == "ci1") {
    j = verdict_json(app_ci1(static_cast<int>(need(a.m, "m")), static_cast<int>(need(a.k, "k")), need(a.nsing, "nsing")));
  } else if (a.theorem == "ci2") {
    j = verdict_json(app_ci2(static_cast<int>(need(a.m, "m")), static_cast<int>(need(a.k, "k")), need(a.nsing, "nsing")));
  } else if (a.theorem == "double_hypersurface") {
    j = verdict_json(app_double_hypersurface(static_cast<int>(need(a.d, "d")), static_cast<int>(need(a.r, "r")),
                                             need(a.nsing, "nsing")));
  } else {
    throw Error(ErrorCode::BadParams, "unknown theorem '" + a.theorem + "'");
  }
  emit(j);
}

struct GenArgs {
  std::string family;
  int r = 2, d = 3, m = 2, k = 2;
  int max_retries = 5;
  bool check_smooth = false;
  std::string out_dir;
};

void cmd_gen(const RunConfig& cfg, const GenArgs& a, const Emitter& emit) {
  FamilySpec spec;
  spec.family = parse_family(a.family);
  spec.r = a.r;
  spec.d = a.d;
  spec.m = a.m;
  spec.k = a.k;
  spec.max_retries = a.max_retries;
  spec.check_smooth = a.check_smooth;
  spec.seed = cfg.seed;
  spec.scan = cfg.scan();
  if (cfg.field_text.empty()) {
    spec.p = spec.family == Family::DoubleSolid ? 101 : spec.family == Family::Hypersurface ? 31 : 11;
  } else {
    spec.p = prime_field(FieldSpec::parse(cfg.field_text), "gen").p();
  }
  const FamilyInstance fam = generate(spec);
  const auto& inst = fam.instance;
  int xi = 0;
  Json params;
  switch (spec.family) {
    case Family::DoubleSolid:
      params = {{"r", spec.r}};
      xi = 3 * spec.r - 4;
      break;
    case Family::Hypersurface:
      params = {{"d", spec.d}};
      xi = 2 * spec.d - 5;
      break;
    case Family::CiPlane:
      params = {{"m", spec.m}, {"k", spec.k}};
      xi = -1;
      break;
  }
  Json j;
  j["command"] = "gen";
  j["family"] = family_name(spec.family);
  j["params"] = params;
  j["field"] = inst.sing.field().spec().to_string();
  j["seed_requested"] = spec.seed;
  j["seed_used"] = fam.seed;
  j["expected_nodes"] = fam.expected_nodes;
  j["count"] = inst.sing.size();
  j["clean"] = inst.clean;
  j["node_flags"] = inst.node_flags;
  j["nodes"] = points_json(inst.sing);
  Json polys = Json::array();
  for (const auto& f : inst.defining) polys.push_back(format_poly(f));
  j["polynomials"] = polys;
  Json parts = Json::object();
  for (const auto& [name, f] : fam.parts) parts[name] = format_poly(f);
  j["parts"] = parts;
  if (xi >= 0) {
    const auto r = defect(inst.sing, xi, cfg.threads);
    j["defect"] = {{"xi", xi}, {"value", r.defect}};
  }
  j["evidence"] = "mod-p evidence";
  Json files = Json::array();
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    const std::string stem = (std::filesystem::path(a.out_dir) / family_name(spec.family)).string();
    write_file(stem + ".poly", format_poly_file(inst.defining));
    write_file(stem + ".nodes", format_points(inst.sing));
    files.push_back(stem + ".poly");
    files.push_back(stem + ".nodes");
  }
  j["files"] = files;
  emit(j);
}

unsigned default_threads() {
  if (const char* env = std::getenv("FACTLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"factlab: exact checks of independence and factoriality criteria"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  cfg.threads = default_threads();
  app.add_option("--field", cfg.field_text, "Field: Fp:<p> or QQ (default: the file header, else Fp:101)");
  app.add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Scan threads (default: FACTLAB_THREADS or 1)")->check(CLI::Range(1u, 4096u));
  app.add_option("--scan-cap", cfg.scan_cap, "Largest projective space to scan")
      ->check(CLI::Range(std::uint64_t{1000}, std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "Report file (default: standard output)");

  std::string file, nodes_out;
  int xi = -1, r = -1;
  std::size_t point = 0;
  bool no_scan = false, exhaustive = false;
  CriteriaArgs crit;
  GenArgs gen;

  auto* sing = app.add_subcommand("sing", "Singular points of a hypersurface or complete intersection");
  sing->add_option("poly_file", file, "Polynomial file")->required();
  sing->add_option("--nodes-out", nodes_out, "Write the singular points as a point file");

  auto* def = app.add_subcommand("defect", "Defect of a point set at degree xi");
  def->add_option("points_file", file, "Point file")->required();
  def->add_option("--xi", xi, "Degree")->required()->check(CLI::NonNegativeNumber);

  auto* sep = app.add_subcommand("separator", "Separator of one point at degree xi");
  sep->add_option("points_file", file, "Point file")->required();
  sep->add_option("--xi", xi, "Degree")->required()->check(CLI::NonNegativeNumber);
  sep->add_option("--point", point, "Index of the point")->required();

  auto* bese = app.add_subcommand("bese", "Base points of plane forms of degree xi through the points");
  bese->add_option("points_file", file, "Point file in P^2")->required();
  bese->add_option("--xi", xi, "Degree (>= 3)")->required();
  bese->add_flag("--no-scan", no_scan, "Check the hypotheses only");

  auto* cls = app.add_subcommand("classify", "Classify a nodal surface of degree 2r in P^3");
  cls->add_option("poly_file", file, "Polynomial file")->required();
  cls->add_option("--r", r, "Half the degree")->required();
  cls->add_flag("--exhaustive-planes", exhaustive, "Also try every plane (p <= 31)");

  auto* cri = app.add_subcommand("criteria", "Evaluate a criterion on numeric parameters");
  cri->add_option("--theorem", crit.theorem, "main, prop_3r4, double_solid, hypersurface, ci1, ci2, double_hypersurface")
      ->required();
  cri->add_option("--n", crit.n);
  cri->add_option("--lambda", crit.lambda);
  cri->add_option("--size", crit.size);
  cri->add_option("--xi", crit.xi);
  cri->add_option("--r", crit.r);
  cri->add_option("--eps", crit.eps);
  cri->add_option("--d", crit.d);
  cri->add_option("--m", crit.m);
  cri->add_option("--k", crit.k);
  cri->add_option("--nsing", crit.nsing);
  cri->add_flag("--incidence-certified", crit.incidence_certified, "Curve incidence bound is certified");

  auto* gn = app.add_subcommand("gen", "Generate a verified member of an extremal family");
  gn->add_option("--family", gen.family, "double_solid_eq15, hypersurface_xgyf or ci_plane")->required();
  gn->add_option("--r", gen.r);
  gn->add_option("--d", gen.d);
  gn->add_option("--m", gen.m);
  gn->add_option("--k", gen.k);
  gn->add_option("--max-retries", gen.max_retries)->capture_default_str();
  gn->add_flag("--check-smooth", gen.check_smooth, "ci_plane: also require F and G smooth");
  gn->add_option("--out-dir", gen.out_dir, "Write <family>.poly and <family>.nodes here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorCode::BadParams);
  }

  const Emitter emit(cfg, out);
  try {
    if (*sing) {
      cmd_sing(cfg, file, nodes_out, emit);
    } else if (*def || *sep) {
      const std::string text = read_file(file);
      const FieldSpec spec = resolve_field(cfg, read_point_header(text).field);
      if (spec.kind == FieldSpec::Kind::Prime) {
        const PrimeField field(spec.p);
        if (*def) cmd_defect_over(cfg, text, xi, field, emit);
        else cmd_separator_over(text, xi, point, field, emit);
      } else {
        const RationalField field;
        if (*def) cmd_defect_over(cfg, text, xi, field, emit);
        else cmd_separator_over(text, xi, point, field, emit);
      }
    } else if (*bese) {
      cmd_bese(cfg, file, xi, no_scan, emit);
    } else if (*cls) {
      cmd_classify(cfg, file, r, exhaustive, emit);
    } else if (*cri) {
      cmd_criteria(crit, emit);
    } else if (*gn) {
      cmd_gen(cfg, gen, emit);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace factlab
