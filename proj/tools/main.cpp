#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"

using namespace centrosec;
using namespace centrosec::cli;

namespace {

struct Common {
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::optional<int> starts;
  std::optional<double> residual_tol;
  std::optional<int> threads;
};

InstanceSpec load(const Common& c) {
  InstanceSpec spec;
  try {
    spec = load_instance(c.spec);
  } catch (const ParseError& e) {
    throw std::runtime_error(c.spec + ": " + e.what());
  }
  if (c.seed) spec.seed = spec.solver.seed = *c.seed;
  if (c.starts) spec.solver.starts = *c.starts;
  if (c.residual_tol) spec.solver.residual_tol = *c.residual_tol;
  if (c.threads) spec.solver.threads = *c.threads;
  spec.solver.validate(spec.dimension);
  return spec;
}

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "override the spec seed");
  cmd->add_option("--starts", c.starts, "multi-start count (default 64 n)")->check(CLI::PositiveNumber);
  cmd->add_option("--residual-tol", c.residual_tol, "residual tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text << std::flush;
  else write_file(path, text);
}

int run_check_gradient(const Common& c, int directions, double step, const std::string& out) {
  const InstanceSpec spec = load(c);
  if (!spec.K || !spec.L) throw InvalidArgument("spec must define both K and L");
  const GradientCheck check = check_gradient(*spec.K, *spec.L, directions, spec.seed, step);
  std::ostringstream csv;
  write_gradient_csv(csv, check);
  emit(out, csv.str());
  std::cerr << "directions=" << check.rows.size() << " max_error=" << format_number(check.max_error) << "\n";
  if (check.max_error > kGradientFailThreshold) {
    std::cerr << "gradient check failed: max error above " << kGradientFailThreshold << "\n";
    return kUncertified;
  }
  return kOk;
}

int run_solve(const Common& c, const std::string& out_dir, std::string json, std::string svg) {
  const InstanceSpec spec = load(c);
  const TheoremReport report = solve_spec(spec);
  if (!out_dir.empty()) {
    if (json.empty()) json = out_dir + "/report.json";
    if (svg.empty() && report.dim() == 2) svg = out_dir + "/report.svg";
  }
  emit(json, report_json_string(report));
  if (!svg.empty()) write_file(svg, report_svg(report));
  std::cerr << "pairs=" << report.pairs.size() << " certified=" << (report.certified ? "true" : "false")
            << (report.continuum ? " continuum=true" : "") << "\n";
  return report.certified ? kOk : kUncertified;
}

int run_census(const std::string& family, int instances, int n, std::uint64_t seed, std::optional<int> starts,
               std::optional<int> threads, const std::string& out) {
  const Family fam = parse_family(family);
  SolverConfig cfg;
  if (starts) cfg.starts = *starts;
  if (threads) cfg.threads = *threads;
  cfg.validate(n);
  std::unique_ptr<std::ofstream> file;
  if (!out.empty() && out != "-") {
    write_file(out, "");
    file = std::make_unique<std::ofstream>(out, std::ios::binary);
  }
  std::ostream& os = file ? *file : std::cout;
  CsvWriter csv(os);
  write_census_header(csv);
  std::vector<CensusRow> rows;
  bool unexplained = false;
  for (int i = 0; i < instances; ++i) {
    rows.push_back(census_instance(fam, n, seed, i, cfg));
    write_census_row(csv, rows.back());
    os.flush();
    if (!rows.back().certified && !rows.back().budget_exhausted) unexplained = true;
  }
  std::cerr << census_summary(rows) << "\n";
  return unexplained ? kUncertified : kOk;
}

int run_fixtures(const Common& c, int n, double t, double R) {
  SolverConfig cfg;
  ConvexBody K = ConvexBody::cube(n, 1.0);
  std::optional<ConvexBody> L;
  if (!c.spec.empty()) {
    const InstanceSpec spec = load(c);
    cfg = spec.solver;
    n = spec.dimension;
    K = spec.K ? *spec.K : ConvexBody::cube(n, 1.0);
    L = spec.L;
  } else {
    if (c.seed) cfg.seed = *c.seed;
    if (c.starts) cfg.starts = *c.starts;
    if (c.residual_tol) cfg.residual_tol = *c.residual_tol;
    if (c.threads) cfg.threads = *c.threads;
  }
  cfg.validate(n);
  if (!L || !L->strictly_convex()) L = ConvexBody::ellipsoid_from_axes(Vec::LinSpaced(n, 0.6, 0.4));
  const FixtureOutcome a = fixed_distance_fixture(K, t, cfg);
  const FixtureOutcome b = ball_tangency_fixture(R, *L, cfg);
  std::cout << describe(a) << describe(b);
  return a.passed() && b.passed() ? kOk : kUncertified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical supporting hyperplanes of symmetric convex bodies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "centrosec 0.1.0");

  Common c;
  int directions = 50;
  double step = 1e-5;
  std::string out;
  auto* grad = app.add_subcommand("check-gradient", "compare the analytic gradient with finite differences");
  grad->add_option("--spec", c.spec, "instance spec file")->required();
  grad->add_option("--directions", directions, "random directions")->check(CLI::NonNegativeNumber);
  grad->add_option("--seed", c.seed, "override the spec seed");
  grad->add_option("--step", step, "finite-difference step")->check(CLI::Range(1e-7, 1e-3));
  grad->add_option("--out", out, "CSV output (default stdout)");

  std::string out_dir, json, svg;
  auto* solve_cmd = app.add_subcommand("solve", "find critical pairs and certify the count");
  solve_cmd->add_option("--spec", c.spec, "instance spec file")->required();
  add_solver_flags(solve_cmd, c);
  solve_cmd->add_option("--out-dir", out_dir, "write report.json (and report.svg for n = 2) here");
  solve_cmd->add_option("--json", json, "JSON report path (default stdout)");
  solve_cmd->add_option("--svg", svg, "SVG figure path (n = 2)");

  std::string family = "polytope_in_ellipsoid_hull";
  int instances = 20, n = 2;
  std::uint64_t census_seed_value = 0;
  std::optional<int> census_starts, census_threads;
  auto* census = app.add_subcommand("census", "solve a batch of random instances");
  census->add_option("--family", family, "polytope_in_ellipsoid_hull | ellipsoid_in_polytope | lp_in_ball");
  census->add_option("--instances", instances, "instance count")->check(CLI::NonNegativeNumber);
  census->add_option("--n", n, "dimension")->check(CLI::Range(2, 4));
  census->add_option("--seed", census_seed_value, "census seed");
  census->add_option("--starts", census_starts, "multi-start count per instance")->check(CLI::PositiveNumber);
  census->add_option("--threads", census_threads, "worker threads")->check(CLI::NonNegativeNumber);
  census->add_option("--out", out, "CSV output (default stdout)");

  int fixture_n = 3;
  double t = 0.5, R = 1.0;
  auto* fixtures = app.add_subcommand("fixtures", "closed-form fixtures: ball L at distance t, ball K of radius R");
  fixtures->add_option("--n", fixture_n, "dimension")->check(CLI::Range(2, 16));
  fixtures->add_option("--t", t, "radius of the inner ball");
  fixtures->add_option("--radius", R, "radius of the outer ball")->check(CLI::PositiveNumber);
  fixtures->add_option("--spec", c.spec, "optional spec: K for the first fixture, L for the second");
  add_solver_flags(fixtures, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*grad) return run_check_gradient(c, directions, step, out);
    if (*solve_cmd) return run_solve(c, out_dir, json, svg);
    if (*census) return run_census(family, instances, n, census_seed_value, census_starts, census_threads, out);
    if (*fixtures) return run_fixtures(c, fixture_n, t, R);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
