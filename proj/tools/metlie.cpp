// metlie: Ricci signatures of solvable metric Lie algebras.
//
//   metlie validate <file>
//   metlie analyze (--file F | --catalog NAME | --random FAMILY --dim D --seed S)
//                  [--metric-file G] [--metric-seed S] [--tol-zero X] [--format json|text]
//   metlie verify --suite NAME --count N --dims A..B --seed S [--out DIR] [--format json|text]
//   metlie verify --replay FILE
//
// Exit codes: 0 success, 1 validation or property failure, 2 usage or parse error.
// Default tolerances may be overridden by METLIE_TOL_<NAME> environment
// variables (JACOBI, RANK, PD, PREDICATE, ZERO, DERIVATION); flags win.

#include <metlie/campaign.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <regex>

namespace {

using namespace metlie;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0)) throw UsageError(what + " must be a positive number, got '" + text + "'");
  return v;
}

Tolerances<double> env_tolerances() {
  Tolerances<double> t;
  const std::pair<const char*, double*> vars[] = {
      {"METLIE_TOL_JACOBI", &t.jacobi}, {"METLIE_TOL_RANK", &t.rank}, {"METLIE_TOL_PD", &t.pd},
      {"METLIE_TOL_PREDICATE", &t.predicate}, {"METLIE_TOL_ZERO", &t.zero}, {"METLIE_TOL_DERIVATION", &t.derivation},
  };
  for (const auto& [name, slot] : vars)
    if (const char* v = std::getenv(name)) *slot = parse_positive(v, name);
  return t;
}

std::pair<Index, Index> parse_dims(const std::string& text) {
  static const std::regex range(R"((\d+)\.\.(\d+))");
  static const std::regex single(R"((\d+))");
  std::smatch m;
  if (std::regex_match(text, m, range)) return {std::stol(m[1]), std::stol(m[2])};
  if (std::regex_match(text, m, single)) return {std::stol(m[1]), std::stol(m[1])};
  throw UsageError("--dims expects a..b, got '" + text + "'");
}

int cmd_validate(const std::string& path, const Tolerances<double>& tol) {
  const auto f = read_algebra_file(path);
  const auto r = validate(f, tol);
  std::cout << "dim " << f.dim << (f.name.empty() ? "" : "  name " + f.name) << "\n";
  std::cout << "antisymmetry residual " << r.antisymmetry_residual << "\n";
  std::cout << "Jacobi residual " << r.jacobi_residual << "\n";
  if (r.metric_symmetry_residual) std::cout << "metric symmetry residual " << *r.metric_symmetry_residual << "\n";
  if (r.metric_min_pivot) std::cout << "metric smallest pivot " << *r.metric_min_pivot << "\n";
  for (const auto& p : r.problems) std::cout << "invalid: " << p << "\n";
  std::cout << (r.valid ? "valid" : "invalid") << "\n";
  return r.valid ? kOk : kFailure;
}

struct AnalyzeArgs {
  std::string file, catalog_name, family, metric_file, format = "text";
  std::optional<Index> dim;
  std::optional<std::uint64_t> seed, metric_seed;
  std::optional<std::string> tol_zero;
};

int cmd_analyze(const AnalyzeArgs& a, Tolerances<double> tol) {
  if (a.tol_zero) tol.zero = parse_positive(*a.tol_zero, "--tol-zero");
  const int sources = !a.file.empty() + !a.catalog_name.empty() + !a.family.empty();
  if (sources != 1) throw UsageError("analyze needs exactly one of --file, --catalog, --random");

  ReportInput in;
  if (!a.file.empty()) {
    in.source = "file";
    in.value = a.file;
    in.algebra = read_algebra_file(a.file);
    const auto v = validate(in.algebra, tol);
    if (!v.valid) {
      for (const auto& p : v.problems) std::cerr << "invalid: " << p << "\n";
      return kFailure;
    }
  } else if (!a.catalog_name.empty()) {
    in.source = "catalog";
    in.value = a.catalog_name;
    try {
      in.algebra = make_algebra_file(catalog<double>(a.catalog_name).algebra(), a.catalog_name);
    } catch (const InputError& e) {
      throw UsageError(e.what());
    }
  } else {
    if (!a.dim || !a.seed) throw UsageError("--random needs --dim and --seed");
    GeneratorSpec spec;
    spec.dim = *a.dim;
    spec.seed = *a.seed;
    if (a.family == "nilpotent")
      spec.family = Family::RandomNilpotent;
    else if (a.family == "solvable")
      spec.family = Family::RandomSolvable;
    else if (a.family == "flat" || a.family == "one_negative") {
      spec.family = Family::Semidirect;
      spec.kind = a.family == "flat" ? SemidirectKind::Flat : SemidirectKind::OneNegative;
    } else
      throw UsageError("unknown random family '" + a.family + "' (nilpotent, solvable, flat, one_negative)");
    if (spec.dim < 2 || spec.dim > 12) throw UsageError("--dim must lie in 2..12");
    in.source = "random";
    in.value = a.family;
    in.seed = spec.seed;
    in.algebra = make_algebra_file(generate<double>(spec), a.family);
  }

  if (!a.metric_file.empty() && a.metric_seed) throw UsageError("--metric-file and --metric-seed are exclusive");
  if (!a.metric_file.empty()) {
    const auto g = read_algebra_file(a.metric_file);
    if (!g.metric) throw ParseError(a.metric_file + ": no 'metric' field");
    if (g.dim != in.algebra.dim) throw ParseError(a.metric_file + ": metric dimension differs from the algebra");
    in.algebra.metric = g.metric;
  } else if (a.metric_seed) {
    in.metric_seed = a.metric_seed;
    in.algebra.metric = to_rows(random_metric<double>(in.algebra.dim, *a.metric_seed).gram());
  }

  const auto report = analyze(in, tol);
  if (a.format == "json")
    std::cout << to_json(report).dump(2) << "\n";
  else
    std::cout << render_text(report);
  if (report.classification.applicable && !report.classification.consistent) {
    std::cerr << "structural and spectral routes disagree\n";
    return kFailure;
  }
  return kOk;
}

struct VerifyArgs {
  std::string suite, dims = "2..6", out = ".", format = "text", replay_file;
  int count = 100;
  std::uint64_t seed = 0;
};

int cmd_verify(const VerifyArgs& a, const Tolerances<double>& tol) {
  if (!a.replay_file.empty()) {
    const auto c = read_counterexample(a.replay_file);
    const auto r = replay(c);
    std::cout << "replay " << c.suite << " instance " << c.index << " (dim " << c.dim << ", instance seed "
              << c.instance_seed << ")\n";
    for (const auto& v : r.violations) std::cout << "  ! " << v << "\n";
    const bool same = r.violations == c.violations;
    std::cout << (r.violations.empty() ? "no violation" : same ? "violation reproduced" : "different violation")
              << "\n";
    return r.violations.empty() ? kOk : kFailure;
  }
  if (a.suite.empty()) throw UsageError("verify needs --suite or --replay");
  CampaignOptions o;
  o.suite = a.suite;
  o.count = a.count;
  std::tie(o.dim_lo, o.dim_hi) = parse_dims(a.dims);
  o.seed = a.seed;
  o.tol = tol;
  o.counterexample_dir = a.out;
  bool known = false;
  for (const auto& s : known_suites()) known = known || s == a.suite;
  if (!known) throw UsageError("unknown suite '" + a.suite + "'");
  CampaignSummary s;
  try {
    s = run_campaign(o);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  if (a.format == "json")
    std::cout << to_json(s).dump(2) << "\n";
  else
    std::cout << render_text(s);
  return s.passed() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ricci operator signatures of solvable metric Lie algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(metlie::kToolVersion));

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check antisymmetry, Jacobi and the metric of an algebra file");
  validate_cmd->add_option("file", validate_path, "Algebra file")->required();

  AnalyzeArgs aa;
  std::uint64_t seed = 0, metric_seed = 0;
  Index dim = 0;
  std::string tol_zero;
  auto* analyze_cmd = app.add_subcommand("analyze", "Ricci operator, signature and classification");
  analyze_cmd->add_option("--file", aa.file, "Algebra file");
  analyze_cmd->add_option("--catalog", aa.catalog_name, "Catalog entry");
  analyze_cmd->add_option("--random", aa.family, "Random family: nilpotent, solvable, flat, one_negative");
  auto* dim_opt = analyze_cmd->add_option("--dim", dim, "Dimension for --random");
  auto* seed_opt = analyze_cmd->add_option("--seed", seed, "Seed for --random");
  analyze_cmd->add_option("--metric-file", aa.metric_file, "File whose 'metric' field replaces the metric");
  auto* mseed_opt = analyze_cmd->add_option("--metric-seed", metric_seed, "Draw a random metric with this seed");
  auto* tz_opt = analyze_cmd->add_option("--tol-zero", tol_zero, "Eigenvalue zero band factor");
  analyze_cmd->add_option("--format", aa.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property campaign");
  verify_cmd->add_option("--suite", va.suite, "Suite name");
  verify_cmd->add_option("--count", va.count, "Instances per dimension")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--dims", va.dims, "Dimension range a..b");
  verify_cmd->add_option("--seed", va.seed, "Campaign seed");
  verify_cmd->add_option("--out", va.out, "Directory for counterexample files");
  verify_cmd->add_option("--format", va.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify_cmd->add_option("--replay", va.replay_file, "Re-run the instance recorded in a counterexample file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto tol = env_tolerances();
    if (*validate_cmd) return cmd_validate(validate_path, tol);
    if (*analyze_cmd) {
      if (*dim_opt) aa.dim = dim;
      if (*seed_opt) aa.seed = seed;
      if (*mseed_opt) aa.metric_seed = metric_seed;
      if (*tz_opt) aa.tol_zero = tol_zero;
      return cmd_analyze(aa, tol);
    }
    if (*verify_cmd) return cmd_verify(va, tol);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const metlie::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const metlie::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
