#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace centrosec::cli {

namespace {

std::string join(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_number(v(i));
  }
  return out;
}

}  // namespace

GradientCheck check_gradient(const ConvexBody& K, const ConvexBody& L, int directions, std::uint64_t seed,
                             double step) {
  if (directions < 0) throw InvalidArgument("directions must be non-negative");
  const CapFunctional F(K, L);
  Rng rng = make_rng(seed, 3);
  GradientCheck out;
  for (int i = 0; i < directions; ++i) {
    GradientRow row;
    row.index = i;
    row.direction = random_unit(rng, K.dim());
    row.analytic = F.evaluate(row.direction).tangential_gradient;
    row.finite_difference = F.fd_tangential_gradient(row.direction, step);
    row.error = (row.analytic - row.finite_difference).norm() / std::max(1.0, row.analytic.norm());
    out.max_error = std::max(out.max_error, row.error);
    out.rows.push_back(std::move(row));
  }
  return out;
}

void write_gradient_csv(std::ostream& os, const GradientCheck& check) {
  CsvWriter csv(os);
  csv.row({"index", "direction", "analytic_gradient", "fd_gradient", "relative_error"});
  for (const auto& r : check.rows)
    csv.row({std::to_string(r.index), join(r.direction), join(r.analytic), join(r.finite_difference),
             format_number(r.error)});
}

std::uint64_t census_seed(std::uint64_t seed, int index) {
  return mix_seed(seed, static_cast<std::uint64_t>(index) + 1000);
}

CensusRow census_instance(Family family, int dim, std::uint64_t seed, int index, const SolverConfig& base) {
  CensusRow row;
  row.instance = index;
  row.seed = census_seed(seed, index);
  row.dimension = dim;
  row.family = family;
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = generate_instance(family, dim, row.seed);
  SolverConfig cfg = base;
  cfg.seed = row.seed;
  const TheoremReport r = solve(inst.K, inst.L, cfg);
  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  row.pair_count = static_cast<int>(r.pairs.size());
  row.min_residual = r.pairs.empty() ? std::numeric_limits<double>::quiet_NaN() : r.pairs.front().residual;
  for (const auto& p : r.pairs) {
    row.min_residual = std::min(row.min_residual, p.residual);
    row.max_residual = std::max(row.max_residual, p.residual);
    row.max_gauge_error = std::max(row.max_gauge_error, p.gauge_error);
  }
  row.certified = r.certified;
  row.budget_exhausted = r.budget_exhausted;
  row.continuum = r.continuum;
  return row;
}

void write_census_header(CsvWriter& csv) {
  csv.row({"instance", "seed", "family", "dimension", "pair_count", "min_residual", "max_residual",
           "max_gauge_error", "certified", "budget_exhausted", "continuum", "wall_seconds"});
}

void write_census_row(CsvWriter& csv, const CensusRow& r) {
  const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", r.wall_seconds);
  csv.row({std::to_string(r.instance), std::to_string(r.seed), to_string(r.family), std::to_string(r.dimension),
           std::to_string(r.pair_count), format_number(r.min_residual), format_number(r.max_residual),
           format_number(r.max_gauge_error), b(r.certified), b(r.budget_exhausted), b(r.continuum), wall});
}

std::string census_summary(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  os << "instances=" << rows.size();
  if (rows.empty()) return os.str();
  std::vector<int> counts;
  int uncertified = 0;
  for (const auto& r : rows) {
    counts.push_back(r.pair_count);
    if (!r.certified) ++uncertified;
  }
  std::sort(counts.begin(), counts.end());
  const std::size_t m = counts.size();
  const double median = m % 2 ? counts[m / 2] : 0.5 * (counts[m / 2 - 1] + counts[m / 2]);
  os << " min_pairs=" << counts.front() << " median_pairs=" << median << " max_pairs=" << counts.back()
     << " uncertified=" << uncertified;
  return os.str();
}

FixtureOutcome fixed_distance_fixture(const ConvexBody& K, double t, const SolverConfig& cfg, double tol) {
  const double r = K.inradius();
  if (!(t > 0.0) || !(t < r)) {
    std::ostringstream os;
    os << "t = " << t << " must lie in (0, inradius bound of K = " << format_number(r) << ")";
    throw InvalidArgument(os.str());
  }
  const TheoremReport rep = solve(K, ConvexBody::ball(K.dim(), t), cfg);
  FixtureOutcome out;
  out.name = "fixed-distance";
  out.pairs = static_cast<int>(rep.pairs.size());
  out.tolerance = tol;
  out.certified = rep.certified;
  for (const auto& p : rep.pairs) {
    const double dev = (p.centroid - t * p.direction).norm();
    out.max_deviation = std::max(out.max_deviation, dev);
    if (!(dev <= tol))
      out.violations.push_back("direction [" + join(p.direction) + "]: |centroid - t z| = " + format_number(dev));
  }
  if (out.pairs < K.dim())
    out.violations.push_back("found " + std::to_string(out.pairs) + " pairs, need at least " +
                             std::to_string(K.dim()));
  return out;
}

FixtureOutcome ball_tangency_fixture(double R, const ConvexBody& L, const SolverConfig& cfg, double tol) {
  const TheoremReport rep = solve(ConvexBody::ball(L.dim(), R), L, cfg);
  FixtureOutcome out;
  out.name = "ball-tangency";
  out.pairs = static_cast<int>(rep.pairs.size());
  out.tolerance = tol;
  out.certified = rep.certified;
  for (const auto& p : rep.pairs) {
    const double dev = project_tangent(p.direction, p.touch_point).norm();
    out.max_deviation = std::max(out.max_deviation, dev);
    if (!(dev <= tol))
      out.violations.push_back("direction [" + join(p.direction) + "]: touch point off the normal line by " +
                               format_number(dev));
  }
  if (!rep.continuum && out.pairs < L.dim())
    out.violations.push_back("found " + std::to_string(out.pairs) + " pairs, need at least " +
                             std::to_string(L.dim()));
  return out;
}

std::string describe(const FixtureOutcome& f) {
  std::ostringstream os;
  os << f.name << ": pairs=" << f.pairs << " max_deviation=" << format_number(f.max_deviation)
     << " tolerance=" << format_number(f.tolerance) << " certified=" << (f.certified ? "true" : "false") << " "
     << (f.passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& v : f.violations) os << "  violation: " << v << "\n";
  return os.str();
}

TheoremReport solve_spec(const InstanceSpec& spec) {
  if (!spec.K || !spec.L) throw InvalidArgument("spec must define both K and L");
  return solve(*spec.K, *spec.L, spec.solver);
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace centrosec::cli
