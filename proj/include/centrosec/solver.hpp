#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centrosec/functional.hpp"

namespace centrosec {

enum class SearchMode { Descent, Ascent, Both };
enum class CriticalKind { Min, Max, Saddle, Unclassified };

std::string to_string(SearchMode m);
std::string to_string(CriticalKind k);
SearchMode parse_search_mode(const std::string& s);

struct SolverConfig {
  int starts = 0;  // 0 selects 64 * n
  int max_iters = 500;
  double step_init = 0.1;
  double residual_tol = 1e-7;
  double dedup_angle = 1e-2;
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::Both;
  int threads = 0;  // 0 selects std::thread::hardware_concurrency()

  int resolved_starts(int dim) const { return starts > 0 ? starts : 64 * dim; }
  void validate(int dim) const;
};

struct CriticalPair {
  Vec direction;  // canonical representative of {z, -z}
  double f_value = 0.0;
  double residual = 0.0;
  Vec centroid;
  Vec touch_point;
  CriticalKind kind = CriticalKind::Unclassified;
  int basin_count = 0;
  double gauge_error = 0.0;  // |gauge_L(centroid) - 1|
};

struct SolverDiagnostics {
  int starts = 0;
  int runs = 0;
  int converged_runs = 0;
  int unconverged_first_order = 0;
  int dedup_merges = 0;
  int degenerate_rejections = 0;
  int antipodal_failures = 0;
  long long iterations = 0;
  double f_min = 0.0;
  double f_max = 0.0;
  double boundary_tol = 0.0;
};

struct TheoremReport {
  ConvexBody K;
  ConvexBody L;
  SolverConfig config;
  std::vector<CriticalPair> pairs;
  bool certified = false;
  bool budget_exhausted = false;
  bool continuum = false;
  std::string justification;
  SolverDiagnostics diagnostics;

  int dim() const { return K.dim(); }
};

/// Outcome of one local search on the sphere.
struct SearchResult {
  Vec direction;
  double f_value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> f_trace;  // f after each accepted step (first-order search only)
};

/// Projected gradient descent (or ascent) with Armijo backtracking and
/// retraction by normalization. Stops once the residual drops to
/// `stop_residual`.
SearchResult first_order_search(const CapFunctional& F, const Vec& start, bool ascend, const SolverConfig& cfg,
                                double stop_residual);

/// Levenberg-Marquardt on the residual field r(z) = P_{z^perp}[c(z) - p(z)]
/// with a central-difference Jacobian in tangent_chart(z). Converges to
/// critical points of any index.
SearchResult polish_root(const CapFunctional& F, const Vec& start, double target, int max_iters = 40);

/// Classify a critical direction from f at 2(n-1) probes of radius 1e-3 along
/// the eigenvectors of a finite-difference Hessian.
CriticalKind classify_critical(const CapFunctional& F, const Vec& z);

TheoremReport solve(const ConvexBody& K, const ConvexBody& L, const SolverConfig& cfg);

struct GridCritical {
  Vec direction;
  double residual = 0.0;
};

/// Exhaustive critical-pair census for n in {2, 3}. For n = 2 the signed
/// tangential residual is sampled at `resolution` angles on the half circle
/// and every sign change is bisected; for n = 3 local minima of the residual
/// on an icosahedral mesh with at least `resolution` vertices are polished.
std::vector<GridCritical> grid_census(const ConvexBody& K, const ConvexBody& L, int resolution,
                                      double residual_tol = 1e-7);

/// Distinct pairs (separated by more than the report's dedup angle) >= n, or a
/// flagged critical continuum.
bool certify(const TheoremReport& report, int dim);

/// Number of clusters of `dirs` under projective angle <= angle.
int count_distinct_pairs(const std::vector<Vec>& dirs, double angle);

}  // namespace centrosec
