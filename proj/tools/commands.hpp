#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "centrosec/centrosec.hpp"

namespace centrosec::cli {

enum ExitCode { kOk = 0, kUsage = 1, kUncertified = 2 };

// check-gradient

struct GradientRow {
  int index = 0;
  Vec direction;
  Vec analytic;
  Vec finite_difference;
  double error = 0.0;  // |analytic - fd| / max(1, |analytic|)
};

struct GradientCheck {
  std::vector<GradientRow> rows;
  double max_error = 0.0;
};

inline constexpr double kGradientFailThreshold = 1e-3;

/// Analytic tangential gradient against central differences at `directions`
/// seeded random unit vectors.
GradientCheck check_gradient(const ConvexBody& K, const ConvexBody& L, int directions, std::uint64_t seed,
                             double step);
void write_gradient_csv(std::ostream& os, const GradientCheck& check);

// census

struct CensusRow {
  int instance = 0;
  std::uint64_t seed = 0;
  int dimension = 0;
  Family family = Family::PolytopeInEllipsoidHull;
  int pair_count = 0;
  double min_residual = 0.0;
  double max_residual = 0.0;
  double max_gauge_error = 0.0;
  bool certified = false;
  bool budget_exhausted = false;
  bool continuum = false;
  double wall_seconds = 0.0;
};

/// Seed of instance `index` in a census started from `seed`.
std::uint64_t census_seed(std::uint64_t seed, int index);
CensusRow census_instance(Family family, int dim, std::uint64_t seed, int index, const SolverConfig& base);
void write_census_header(CsvWriter& csv);
void write_census_row(CsvWriter& csv, const CensusRow& row);
std::string census_summary(const std::vector<CensusRow>& rows);

// fixtures

struct FixtureOutcome {
  std::string name;
  int pairs = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool certified = false;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// L = Ball(t) inside K: every critical section sits at distance t with
/// centroid t * direction. Throws InvalidArgument unless 0 < t < inradius(K).
FixtureOutcome fixed_distance_fixture(const ConvexBody& K, double t, const SolverConfig& cfg, double tol = 1e-6);
/// K = Ball(R) around a strictly convex L: touch points are parallel to the
/// critical directions.
FixtureOutcome ball_tangency_fixture(double R, const ConvexBody& L, const SolverConfig& cfg, double tol = 1e-6);
std::string describe(const FixtureOutcome& f);

// solve

/// Solve a spec that sets both bodies, with the spec's solver settings.
TheoremReport solve_spec(const InstanceSpec& spec);

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::string& path, const std::string& text);

}  // namespace centrosec::cli
