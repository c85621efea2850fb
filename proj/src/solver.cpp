#include "centrosec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "centrosec/error.hpp"
#include "centrosec/parallel.hpp"
#include "centrosec/sphere.hpp"

namespace centrosec {

std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Descent: return "descent";
    case SearchMode::Ascent: return "ascent";
    case SearchMode::Both: return "both";
  }
  return "unknown";
}

std::string to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::Min: return "min";
    case CriticalKind::Max: return "max";
    case CriticalKind::Saddle: return "saddle";
    case CriticalKind::Unclassified: return "unclassified";
  }
  return "unknown";
}

SearchMode parse_search_mode(const std::string& s) {
  if (s == "descent") return SearchMode::Descent;
  if (s == "ascent") return SearchMode::Ascent;
  if (s == "both") return SearchMode::Both;
  throw InvalidArgument("unknown search mode '" + s + "' (expected descent, ascent or both)");
}

void SolverConfig::validate(int dim) const {
  if (!(residual_tol > 0.0)) throw InvalidArgument("residual_tol must be positive");
  if (!(dedup_angle > 0.0)) throw InvalidArgument("dedup_angle must be positive");
  if (resolved_starts(dim) < dim) throw InvalidArgument("need at least n starts");
  if (max_iters < 1) throw InvalidArgument("max_iters must be positive");
  if (!(step_init > 0.0)) throw InvalidArgument("step_init must be positive");
}

SearchResult first_order_search(const CapFunctional& F, const Vec& start, bool ascend, const SolverConfig& cfg,
                                double stop_residual) {
  const double sign = ascend ? -1.0 : 1.0;
  constexpr double kArmijo = 1e-4;
  constexpr double kMaxAngle = 0.5;
  SearchResult res;
  Vec z = normalized(start);
  FunctionalEval e = F.evaluate(z);
  double alpha = -1.0;
  for (int it = 0; it < cfg.max_iters && e.residual > stop_residual; ++it) {
    const Vec d = -sign * e.tangential_gradient;
    const double gn = d.norm();
    if (!(gn > 0.0)) break;
    if (alpha < 0.0) alpha = cfg.step_init / gn;
    bool accepted = false;
    Vec znew;
    double fnew = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      alpha = std::min(alpha, kMaxAngle / gn);
      znew = normalized(z + alpha * d);
      fnew = F.value(znew);
      if (sign * fnew <= sign * e.f_value - kArmijo * alpha * gn * gn) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    const Vec g_old = project_tangent(znew, e.tangential_gradient);
    const Vec step = project_tangent(znew, znew - z);
    z = znew;
    e = F.evaluate(z, fnew);
    res.f_trace.push_back(e.f_value);
    ++res.iterations;
    // Barzilai-Borwein trial step for the next line search
    const double sy = std::abs(step.dot(e.tangential_gradient - g_old));
    const double gnew = e.tangential_gradient.norm();
    alpha = sy > 0.0 && gnew > 0.0 ? step.squaredNorm() / sy : 2.0 * alpha;
  }
  res.direction = z;
  res.f_value = e.f_value;
  res.residual = e.residual;
  res.converged = e.residual <= stop_residual;
  return res;
}

SearchResult polish_root(const CapFunctional& F, const Vec& start, double target, int max_iters) {
  constexpr double kStep = 1e-6;
  constexpr double kMaxMove = 0.3;
  const int n = F.dim();
  SearchResult res;
  Vec z = normalized(start);
  Vec r = F.residual_vector(z);
  double rn = r.norm();
  double lambda = 1e-3;
  for (int it = 0; it < max_iters && rn > target; ++it) {
    const Mat B = tangent_chart(z);
    const Vec rb = B.transpose() * r;
    Mat J(n - 1, n - 1);
    for (int j = 0; j < n - 1; ++j) {
      const Vec rp = F.residual_vector(normalized(z + kStep * B.col(j)));
      const Vec rm = F.residual_vector(normalized(z - kStep * B.col(j)));
      J.col(j) = B.transpose() * (rp - rm) / (2.0 * std::atan(kStep));
    }
    const Mat JtJ = J.transpose() * J;
    const Vec grad = J.transpose() * rb;
    const double mu = std::max(JtJ.diagonal().maxCoeff(), 1e-300);
    bool accepted = false;
    for (int k = 0; k < 24; ++k) {
      const Mat M = JtJ + lambda * mu * Mat::Identity(n - 1, n - 1);
      Vec delta = -M.ldlt().solve(grad);
      if (!delta.allFinite()) {
        lambda *= 4.0;
        continue;
      }
      if (delta.norm() > kMaxMove) delta *= kMaxMove / delta.norm();
      const Vec znew = normalized(z + B * delta);
      Vec rnew;
      try {
        rnew = F.residual_vector(znew);
      } catch (const DegenerateSection&) {
        lambda *= 4.0;
        continue;
      }
      if (rnew.norm() < rn) {
        z = znew;
        r = rnew;
        rn = rnew.norm();
        lambda = std::max(lambda / 4.0, 1e-15);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
    ++res.iterations;
  }
  res.direction = z;
  res.residual = rn;
  res.f_value = F.value(z);
  res.converged = rn <= target;
  return res;
}

CriticalKind classify_critical(const CapFunctional& F, const Vec& z_in) {
  constexpr double kHessStep = 1e-4;
  constexpr double kProbe = 1e-3;
  const Vec z = normalized(z_in);
  const int m = F.dim() - 1;
  const Mat B = tangent_chart(z);
  Mat Hs(m, m);
  for (int j = 0; j < m; ++j) {
    const Vec gp = F.evaluate(normalized(z + kHessStep * B.col(j))).tangential_gradient;
    const Vec gm = F.evaluate(normalized(z - kHessStep * B.col(j))).tangential_gradient;
    Hs.col(j) = B.transpose() * (gp - gm) / (2.0 * std::atan(kHessStep));
  }
  Hs = 0.5 * (Hs + Hs.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> eig(Hs);
  const double f0 = F.value(z);
  const double noise = 1e-12 * F.outer().volume();
  int up = 0, down = 0;
  for (int j = 0; j < m; ++j) {
    const Vec dir = B * eig.eigenvectors().col(j);
    int s[2];
    for (int k = 0; k < 2; ++k) {
      const double d = F.value(normalized(z + (k ? -kProbe : kProbe) * dir)) - f0;
      s[k] = d > noise ? 1 : (d < -noise ? -1 : 0);
    }
    if (s[0] == 0 || s[0] != s[1]) return CriticalKind::Unclassified;
    (s[0] > 0 ? up : down) += 1;
  }
  if (down == 0) return CriticalKind::Min;
  if (up == 0) return CriticalKind::Max;
  return CriticalKind::Saddle;
}

int count_distinct_pairs(const std::vector<Vec>& dirs, double angle) {
  std::vector<Vec> reps;
  for (const auto& d : dirs) {
    const bool dup = std::any_of(reps.begin(), reps.end(), [&](const Vec& r) { return projective_angle(r, d) <= angle; });
    if (!dup) reps.push_back(d);
  }
  return static_cast<int>(reps.size());
}

namespace {

enum class RunType { Descent, Ascent, Root };

struct RunOutcome {
  SearchResult result;
  RunType type = RunType::Root;
  bool degenerate = false;
  bool first_order_stalled = false;
};

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

}  // namespace

TheoremReport solve(const ConvexBody& K, const ConvexBody& L, const SolverConfig& cfg) {
  const int n = K.dim();
  cfg.validate(n);
  const CapFunctional F(K, L);
  TheoremReport rep{K, L, cfg, {}, false, false, false, {}, {}};
  const double tol = cfg.residual_tol;
  const double polish_target = 0.1 * tol;
  const double stop_residual = std::max(1e-3 * L.inradius(), 10.0 * tol);

  const int S = cfg.resolved_starts(n);
  std::vector<Vec> starts = low_discrepancy_sphere(n, (S + 1) / 2);
  Rng rng = make_rng(cfg.seed, 0);
  while (static_cast<int>(starts.size()) < S) starts.push_back(random_unit(rng, n));

  struct Task {
    int start;
    RunType type;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < S; ++i) {
    if (cfg.mode != SearchMode::Ascent) tasks.push_back({i, RunType::Descent});
    if (cfg.mode != SearchMode::Descent) tasks.push_back({i, RunType::Ascent});
    if (cfg.mode == SearchMode::Both) tasks.push_back({i, RunType::Root});
  }

  std::vector<RunOutcome> outcomes(tasks.size());
  std::vector<double> f_start(S);
  parallel_for(S, cfg.threads, [&](int i) { f_start[i] = F.value(starts[i]); });
  parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int k) {
    const Task& task = tasks[k];
    RunOutcome& out = outcomes[k];
    out.type = task.type;
    try {
      if (task.type == RunType::Root) {
        out.result = polish_root(F, starts[task.start], polish_target, 60);
      } else {
        const SearchResult fo =
            first_order_search(F, starts[task.start], task.type == RunType::Ascent, cfg, stop_residual);
        out.result = polish_root(F, fo.direction, polish_target, 40);
        out.result.iterations += fo.iterations;
        out.first_order_stalled = !fo.converged && out.result.residual > tol;
      }
    } catch (const DegenerateSection&) {
      out.degenerate = true;
    }
  });

  auto& diag = rep.diagnostics;
  diag.starts = S;
  diag.runs = static_cast<int>(tasks.size());
  diag.boundary_tol = tol / L.inradius() + 1e-12;
  std::vector<int> converged;
  for (int k = 0; k < static_cast<int>(outcomes.size()); ++k) {
    const auto& o = outcomes[k];
    if (o.degenerate) {
      ++diag.degenerate_rejections;
      continue;
    }
    diag.iterations += o.result.iterations;
    if (o.first_order_stalled) ++diag.unconverged_first_order;
    if (o.result.residual <= tol) converged.push_back(k);
  }
  diag.converged_runs = static_cast<int>(converged.size());

  double fmin = *std::min_element(f_start.begin(), f_start.end());
  double fmax = *std::max_element(f_start.begin(), f_start.end());
  for (int k : converged) {
    fmin = std::min(fmin, outcomes[k].result.f_value);
    fmax = std::max(fmax, outcomes[k].result.f_value);
  }
  diag.f_min = fmin;
  diag.f_max = fmax;
  rep.continuum = !converged.empty() && (fmax - fmin) <= 1e-10 * K.volume();

  // best residual first; ties broken by task order
  std::stable_sort(converged.begin(), converged.end(),
                   [&](int a, int b) { return outcomes[a].result.residual < outcomes[b].result.residual; });
  struct Cluster {
    Vec direction;
    int count;
  };
  std::vector<Cluster> clusters;
  for (int k : converged) {
    const Vec& d = outcomes[k].result.direction;
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const Cluster& c) { return projective_angle(c.direction, d) <= cfg.dedup_angle; });
    if (it != clusters.end()) {
      ++it->count;
      ++diag.dedup_merges;
    } else {
      clusters.push_back({d, 1});
    }
  }

  rep.pairs.resize(clusters.size());
  std::vector<int> antipodal_fail(clusters.size(), 0);
  parallel_for(static_cast<int>(clusters.size()), cfg.threads, [&](int c) {
    const Vec z = canonical_direction(clusters[c].direction);
    const FunctionalEval e = F.evaluate(z);
    CriticalPair& p = rep.pairs[c];
    p.direction = z;
    p.f_value = e.f_value;
    p.residual = e.residual;
    p.centroid = e.section.centroid;
    p.touch_point = e.touch_point;
    p.basin_count = clusters[c].count;
    p.gauge_error = std::abs(L.gauge(e.section.centroid) - 1.0);
    p.kind = rep.continuum ? CriticalKind::Unclassified : classify_critical(F, z);
    if (F.evaluate(-z).residual > tol) antipodal_fail[c] = 1;
  });
  for (int f : antipodal_fail) diag.antipodal_failures += f;
  std::sort(rep.pairs.begin(), rep.pairs.end(), [](const CriticalPair& a, const CriticalPair& b) {
    if (a.f_value != b.f_value) return a.f_value < b.f_value;
    return lex_less(a.direction, b.direction);
  });

  const int count = static_cast<int>(rep.pairs.size());
  rep.certified = rep.continuum || count >= n;
  rep.budget_exhausted = converged.empty() || (!rep.certified && diag.unconverged_first_order > 0);
  if (rep.continuum) {
    rep.justification = "f constant within 1e-10 vol(K) over all starts; every direction is critical";
  } else {
    rep.justification = "found " + std::to_string(count) + " distinct pairs, lower bound " + std::to_string(n);
  }
  return rep;
}

bool certify(const TheoremReport& report, int dim) {
  if (report.continuum) return true;
  std::vector<Vec> dirs;
  for (const auto& p : report.pairs)
    if (p.residual <= report.config.residual_tol) dirs.push_back(p.direction);
  const int count = count_distinct_pairs(dirs, report.config.dedup_angle);
  if (report.budget_exhausted && count < dim) return false;
  return count >= dim;
}

std::vector<GridCritical> grid_census(const ConvexBody& K, const ConvexBody& L, int resolution, double residual_tol) {
  const int n = K.dim();
  if (n != 2 && n != 3) throw InvalidArgument("grid_census supports n = 2 and n = 3 only");
  if (resolution < 8) throw InvalidArgument("grid_census resolution too small");
  const CapFunctional F(K, L);
  std::vector<GridCritical> roots;
  auto add_root = [&](const Vec& z, double residual) {
    const Vec c = canonical_direction(z);
    for (const auto& r : roots)
      if (projective_angle(r.direction, c) <= 1e-6) return;
    roots.push_back({c, residual});
  };

  if (n == 2) {
    auto dir = [](double th) {
      Vec z(2);
      z << std::cos(th), std::sin(th);
      return z;
    };
    auto signed_residual = [&](double th) {
      Vec w(2);
      w << -std::sin(th), std::cos(th);
      return F.residual_vector(dir(th)).dot(w);
    };
    const double pi = std::numbers::pi;
    std::vector<double> s(resolution + 1);
    for (int k = 0; k <= resolution; ++k) s[k] = signed_residual(pi * k / resolution);
    for (int k = 0; k < resolution; ++k) {
      double a = pi * k / resolution, b = pi * (k + 1) / resolution;
      double sa = s[k];
      if (sa == 0.0) {
        add_root(dir(a), 0.0);
        continue;
      }
      if (!(sa * s[k + 1] < 0.0)) continue;
      double m = 0.5 * (a + b), sm = signed_residual(m);
      for (int it = 0; it < 200 && sm != 0.0 && b - a > 1e-14; ++it) {
        if (sa * sm < 0.0) {
          b = m;
        } else {
          a = m;
          sa = sm;
        }
        m = 0.5 * (a + b);
        sm = signed_residual(m);
      }
      if (std::abs(sm) <= residual_tol) {
        add_root(dir(m), std::abs(sm));
        continue;
      }
      // bisection stalls where the residual is not Lipschitz in the angle
      const SearchResult p = polish_root(F, dir(m), 0.1 * residual_tol, 60);
      if (p.residual <= residual_tol && projective_angle(p.direction, dir(m)) <= pi / resolution)
        add_root(p.direction, p.residual);
    }
    std::sort(roots.begin(), roots.end(), [](const GridCritical& x, const GridCritical& y) {
      return std::atan2(x.direction(1), x.direction(0)) < std::atan2(y.direction(1), y.direction(0));
    });
    return roots;
  }

  const SphereMesh mesh = icosphere(resolution);
  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<double> r(nv);
  for (int i = 0; i < nv; ++i) r[i] = F.residual_vector(mesh.vertices[i]).norm();
  for (int i = 0; i < nv; ++i) {
    const bool local_min = std::all_of(mesh.neighbors[i].begin(), mesh.neighbors[i].end(),
                                       [&](int j) { return r[i] <= r[j]; });
    if (!local_min) continue;
    const SearchResult p = polish_root(F, mesh.vertices[i], 0.1 * residual_tol, 60);
    if (p.residual <= residual_tol) add_root(p.direction, p.residual);
  }
  std::sort(roots.begin(), roots.end(),
            [](const GridCritical& x, const GridCritical& y) { return lex_less(x.direction, y.direction); });
  return roots;
}

}  // namespace centrosec
