#include "centrosec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "centrosec/error.hpp"

namespace centrosec {

using nlohmann::ordered_json;

double round_sig(double v, int digits) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", round_sig(v));
  return buf;
}

ordered_json to_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(round_sig(v(i)));
  return a;
}

namespace {

ordered_json rows_json(const Mat& M) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) a.push_back(to_json(Vec(M.row(i).transpose())));
  return a;
}

}  // namespace

ordered_json to_json(const ConvexBody& body) {
  ordered_json j;
  j["kind"] = to_string(body.kind());
  switch (body.kind()) {
    case BodyKind::Ball: j["radius"] = round_sig(body.radius()); break;
    case BodyKind::Ellipsoid: j["matrix"] = rows_json(body.shape()); break;
    case BodyKind::LpBall:
      j["p"] = round_sig(body.lp_exponent());
      j["scale"] = round_sig(body.lp_scale());
      break;
    case BodyKind::HPolytope: {
      const auto& P = body.polytope();
      ordered_json facets = ordered_json::array();
      for (Eigen::Index i = 0; i < P.normals.rows(); ++i) {
        ordered_json f = to_json(Vec(P.normals.row(i).transpose()));
        f.push_back(round_sig(P.offsets(i)));
        facets.push_back(f);
      }
      j["facets"] = facets;
      break;
    }
    case BodyKind::VPolytope: j["vertices"] = rows_json(body.polytope().vertices); break;
  }
  return j;
}

ordered_json to_json(const SolverConfig& cfg) {
  ordered_json j;
  j["starts"] = cfg.starts;
  j["max_iters"] = cfg.max_iters;
  j["step_init"] = round_sig(cfg.step_init);
  j["residual_tol"] = round_sig(cfg.residual_tol);
  j["dedup_angle"] = round_sig(cfg.dedup_angle);
  j["seed"] = cfg.seed;
  j["mode"] = to_string(cfg.mode);
  return j;
}

ordered_json to_json(const TheoremReport& r) {
  ordered_json j;
  j["schema"] = kReportSchema;
  ordered_json inst;
  inst["dimension"] = r.dim();
  inst["seed"] = r.config.seed;
  inst["K"] = to_json(r.K);
  inst["L"] = to_json(r.L);
  j["instance"] = inst;
  j["config"] = to_json(r.config);
  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs) {
    ordered_json q;
    q["direction"] = to_json(p.direction);
    q["f"] = round_sig(p.f_value);
    q["residual"] = round_sig(p.residual);
    q["centroid"] = to_json(p.centroid);
    q["touch_point"] = to_json(p.touch_point);
    q["kind"] = to_string(p.kind);
    q["basin_count"] = p.basin_count;
    q["gauge_error"] = round_sig(p.gauge_error);
    pairs.push_back(q);
  }
  j["pairs"] = pairs;
  j["pair_count"] = r.pairs.size();
  j["certified"] = r.certified;
  j["budget_exhausted"] = r.budget_exhausted;
  j["continuum"] = r.continuum;
  j["justification"] = r.justification;
  const auto& d = r.diagnostics;
  ordered_json dj;
  dj["starts"] = d.starts;
  dj["runs"] = d.runs;
  dj["converged_runs"] = d.converged_runs;
  dj["unconverged_first_order"] = d.unconverged_first_order;
  dj["dedup_merges"] = d.dedup_merges;
  dj["degenerate_rejections"] = d.degenerate_rejections;
  dj["antipodal_failures"] = d.antipodal_failures;
  dj["iterations"] = d.iterations;
  dj["f_min"] = round_sig(d.f_min);
  dj["f_max"] = round_sig(d.f_max);
  dj["boundary_tol"] = round_sig(d.boundary_tol);
  j["diagnostics"] = dj;
  return j;
}

std::string report_json_string(const TheoremReport& report) { return to_json(report).dump(2) + "\n"; }

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Closed boundary polyline of a 2-D body in model coordinates.
std::vector<Vec> outline(const ConvexBody& body) {
  std::vector<Vec> pts;
  if (body.is_polytope()) {
    const Mat& V = body.polytope().vertices;
    for (Eigen::Index i = 0; i < V.rows(); ++i) pts.emplace_back(V.row(i).transpose());
    std::sort(pts.begin(), pts.end(),
              [](const Vec& a, const Vec& b) { return std::atan2(a(1), a(0)) < std::atan2(b(1), b(0)); });
    return pts;
  }
  constexpr int kSteps = 360;
  for (int k = 0; k < kSteps; ++k) {
    const double th = 2.0 * std::numbers::pi * k / kSteps;
    Vec u(2);
    u << std::cos(th), std::sin(th);
    pts.push_back(u / body.gauge(u));
  }
  return pts;
}

}  // namespace

std::string report_svg(const TheoremReport& r) {
  if (r.dim() != 2) throw InvalidArgument("SVG output is only available for n = 2");
  const double R = 1.15 * r.K.circumradius();
  const double size = 600.0;
  const double s = size / (2.0 * R);
  auto X = [&](double x) { return fmt(size / 2.0 + s * x); };
  auto Y = [&](double y) { return fmt(size / 2.0 - s * y); };
  auto poly = [&](const std::vector<Vec>& pts) {
    std::string out;
    for (const auto& p : pts) out += X(p(0)) + "," + Y(p(1)) + " ";
    if (!out.empty()) out.pop_back();
    return out;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <polygon class=\"body-K\" points=\"" << poly(outline(r.K))
     << "\" fill=\"#dde7f3\" stroke=\"#2b5d9b\" stroke-width=\"1.5\"/>\n";
  os << "  <polygon class=\"body-L\" points=\"" << poly(outline(r.L))
     << "\" fill=\"#f6e2cf\" stroke=\"#b5651d\" stroke-width=\"1.5\"/>\n";
  const double half = 1.2 * r.K.circumradius();
  for (const auto& p : r.pairs) {
    for (double sign : {1.0, -1.0}) {
      const Vec z = sign * p.direction;
      const Vec touch = sign * p.touch_point;
      Vec w(2);
      w << -z(1), z(0);
      const Vec a = touch + half * w, b = touch - half * w;
      os << "  <line class=\"tangent-line\" x1=\"" << X(a(0)) << "\" y1=\"" << Y(a(1)) << "\" x2=\"" << X(b(0))
         << "\" y2=\"" << Y(b(1)) << "\" stroke=\"#555555\" stroke-width=\"0.8\"/>\n";
    }
  }
  for (const auto& p : r.pairs) {
    os << "  <circle class=\"centroid\" cx=\"" << X(p.centroid(0)) << "\" cy=\"" << Y(p.centroid(1))
       << "\" r=\"3.5\" fill=\"#c0392b\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") != std::string::npos) {
      os_ << '"';
      for (char c : f) {
        if (c == '"') os_ << '"';
        os_ << c;
      }
      os_ << '"';
    } else {
      os_ << f;
    }
  }
  os_ << "\r\n";
}

}  // namespace centrosec
