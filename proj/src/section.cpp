#include "centrosec/section.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "centrosec/error.hpp"
#include "centrosec/polytope.hpp"
#include "centrosec/sphere.hpp"

namespace centrosec {

Hyperplane::Hyperplane(Vec direction, double offset) : direction_(std::move(direction)), offset_(offset) {
  if (direction_.size() < 2) throw InvalidArgument("hyperplane direction must have dimension >= 2");
  if (std::abs(direction_.norm() - 1.0) > 1e-12) throw InvalidArgument("hyperplane direction must be a unit vector");
  if (!std::isfinite(offset_)) throw InvalidArgument("hyperplane offset must be finite");
}

std::string to_string(SectionMethod m) {
  switch (m) {
    case SectionMethod::Exact: return "exact";
    case SectionMethod::Analytic: return "analytic";
    case SectionMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

double unit_ball_cap(int dim, double s) {
  if (s >= 1.0) return 0.0;
  const double full = unit_ball_volume(dim);
  if (s <= -1.0) return full;
  if (s < 0.0) return full - unit_ball_cap(dim, -s);
  return 0.5 * full * boost::math::ibeta(0.5 * (dim + 1), 0.5, 1.0 - s * s);
}

namespace {

void check_dims(const ConvexBody& K, const Hyperplane& H) {
  if (H.direction().size() != K.dim()) throw InvalidArgument("hyperplane and body differ in dimension");
}

SectionData empty_section(int n, SectionMethod method) {
  SectionData s;
  s.measure = 0.0;
  s.centroid = Vec::Constant(n, std::numeric_limits<double>::quiet_NaN());
  s.moment = Vec::Zero(n);
  s.method = method;
  return s;
}

SectionData quadric_section(const ConvexBody& K, const Hyperplane& H) {
  const int n = K.dim();
  const Vec& x = H.direction();
  const double t = H.offset();
  if (K.kind() == BodyKind::Ball) {
    const double r2 = K.radius() * K.radius() - t * t;
    if (r2 <= 0.0) return empty_section(n, SectionMethod::Analytic);
    SectionData s;
    s.method = SectionMethod::Analytic;
    s.measure = unit_ball_volume(n - 1) * std::pow(r2, 0.5 * (n - 1));
    s.centroid = t * x;
    s.moment = s.measure * s.centroid;
    return s;
  }
  // y = t x + Q w:  (w - w0)^T M (w - w0) <= rho
  const Mat& A = K.shape();
  const Mat Q = tangent_chart(x);
  const Mat M = Q.transpose() * A * Q;
  const Vec bvec = t * (Q.transpose() * (A * x));
  Eigen::LLT<Mat> llt(M);
  const Vec w0 = -llt.solve(bvec);
  const double rho = 1.0 - t * t * x.dot(A * x) - bvec.dot(w0);
  if (rho <= 0.0) return empty_section(n, SectionMethod::Analytic);
  const double sqrt_det = llt.matrixL().toDenseMatrix().diagonal().prod();
  SectionData s;
  s.method = SectionMethod::Analytic;
  s.measure = unit_ball_volume(n - 1) * std::pow(rho, 0.5 * (n - 1)) / sqrt_det;
  s.centroid = t * x + Q * w0;
  s.moment = s.measure * s.centroid;
  return s;
}

SectionData polytope_section(const ConvexBody& K, const Hyperplane& H) {
  const int n = K.dim();
  const auto& P = K.polytope();
  // Slice {<c, y> = |t|} for the canonical c and reflect through the origin
  // when needed, so mirrored and re-oriented planes give bitwise-related results.
  const Vec x = canonical_direction(H.direction());
  const double signed_t = x.dot(H.direction()) > 0.0 ? H.offset() : -H.offset();
  const bool mirror = signed_t < 0.0;
  const double t = std::abs(signed_t);
  const Mat pts = poly::slice_vertices(P, x, t);
  if (pts.rows() < n) return empty_section(n, SectionMethod::Exact);
  const Mat Q = tangent_chart(x);
  const Mat W = (pts - Mat::Ones(pts.rows(), 1) * (t * x).transpose()) * Q;
  const Mat Aw = P.normals * Q;
  const Vec bw = P.offsets - t * (P.normals * x);
  const auto m = poly::moments(Aw, bw, W, poly::incidence_tol(P));
  if (!(m.volume > 0.0)) return empty_section(n, SectionMethod::Exact);
  SectionData s;
  s.method = SectionMethod::Exact;
  s.measure = m.volume;
  s.centroid = t * x + Q * m.centroid;
  if (mirror) s.centroid = -s.centroid;
  s.moment = s.measure * s.centroid;
  return s;
}

double polytope_cap(const ConvexBody& K, const Hyperplane& H) {
  const int n = K.dim();
  const auto& P = K.polytope();
  const Vec& x = H.direction();
  const double t = H.offset();
  const double tol = poly::incidence_tol(P);
  const Vec h = P.vertices * x;
  if (h.minCoeff() >= t - tol) return P.volume;
  if (h.maxCoeff() <= t + tol) return 0.0;
  const Mat slice = poly::slice_vertices(P, x, t);
  std::vector<int> above;
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (h(i) > t + tol) above.push_back(static_cast<int>(i));
  Mat V(above.size() + slice.rows(), n);
  for (std::size_t i = 0; i < above.size(); ++i) V.row(i) = P.vertices.row(above[i]);
  V.bottomRows(slice.rows()) = slice;
  Mat A(P.normals.rows() + 1, n);
  Vec b(P.offsets.size() + 1);
  A.topRows(P.normals.rows()) = P.normals;
  A.row(P.normals.rows()) = -x.transpose();
  b.head(P.offsets.size()) = P.offsets;
  b(P.offsets.size()) = -t;
  return poly::moments(A, b, V, tol).volume;
}

}  // namespace

double cap_volume(const ConvexBody& K, const Hyperplane& H) {
  check_dims(K, H);
  const int n = K.dim();
  switch (K.kind()) {
    case BodyKind::Ball:
      return std::pow(K.radius(), n) * unit_ball_cap(n, H.offset() / K.radius());
    case BodyKind::Ellipsoid: {
      const double h = K.support(H.direction());
      return K.volume() * unit_ball_cap(n, H.offset() / h) / unit_ball_volume(n);
    }
    case BodyKind::LpBall:
      return mc_cap_volume(K, H, kDefaultMcSamples, 0).value;
    case BodyKind::HPolytope:
    case BodyKind::VPolytope:
      return polytope_cap(K, H);
  }
  return 0.0;
}

SectionData section(const ConvexBody& K, const Hyperplane& H) {
  check_dims(K, H);
  switch (K.kind()) {
    case BodyKind::Ball:
    case BodyKind::Ellipsoid:
      return quadric_section(K, H);
    case BodyKind::LpBall:
      return mc_section(K, H, kDefaultMcSamples, default_slab_thickness(K), 0);
    case BodyKind::HPolytope:
    case BodyKind::VPolytope:
      return polytope_section(K, H);
  }
  return empty_section(K.dim(), SectionMethod::Exact);
}

double default_slab_thickness(const ConvexBody& K) { return 2e-3 * K.circumradius(); }

namespace {

constexpr std::int64_t kChunk = 1 << 16;

}  // namespace

McEstimate mc_cap_volume(const ConvexBody& K, const Hyperplane& H, std::int64_t samples, std::uint64_t seed) {
  check_dims(K, H);
  if (samples < 1000) throw InvalidArgument("mc_cap_volume: need at least 1000 samples");
  const int n = K.dim();
  const Vec half = K.bounding_half_widths();
  const double box = (2.0 * half).prod();
  std::int64_t hits = 0;
  Vec y(n);
  for (std::int64_t start = 0, chunk = 0; start < samples; start += kChunk, ++chunk) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(chunk));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::int64_t end = std::min(samples, start + kChunk);
    for (std::int64_t s = start; s < end; ++s) {
      for (int i = 0; i < n; ++i) y(i) = half(i) * unif(rng);
      if (y.dot(H.direction()) >= H.offset() && K.gauge(y) <= 1.0) ++hits;
    }
  }
  const double p = static_cast<double>(hits) / samples;
  return {box * p, box * std::sqrt(p * (1.0 - p) / samples)};
}

SectionData mc_section(const ConvexBody& K, const Hyperplane& H, std::int64_t samples, double thickness,
                       std::uint64_t seed) {
  check_dims(K, H);
  if (samples < 1000) throw InvalidArgument("mc_section: need at least 1000 samples");
  if (!(thickness > 0.0)) throw InvalidArgument("mc_section: slab thickness must be positive");
  const int n = K.dim();
  const Vec& x = H.direction();
  const double t = H.offset();
  const double R = K.circumradius();
  const Mat Q = tangent_chart(x);

  std::int64_t hits = 0;
  Vec sum = Vec::Zero(n - 1), sumsq = Vec::Zero(n - 1);
  Vec w(n - 1), y(n);
  for (std::int64_t start = 0, chunk = 0; start < samples; start += kChunk, ++chunk) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(chunk));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::int64_t end = std::min(samples, start + kChunk);
    for (std::int64_t s = start; s < end; ++s) {
      const double off = 0.5 * thickness * unif(rng);
      for (int i = 0; i < n - 1; ++i) w(i) = R * unif(rng);
      y = (t + off) * x + Q * w;
      if (K.gauge(y) <= 1.0) {
        ++hits;
        sum += w;
        sumsq += w.cwiseProduct(w);
      }
    }
  }
  if (hits == 0) {
    SectionData s = empty_section(n, SectionMethod::MonteCarlo);
    s.measure_stderr = 0.0;
    return s;
  }
  const double p = static_cast<double>(hits) / samples;
  const double area = std::pow(2.0 * R, n - 1);
  SectionData s;
  s.method = SectionMethod::MonteCarlo;
  s.measure = area * p;
  s.measure_stderr = area * std::sqrt(p * (1.0 - p) / samples);
  // in-plane mean; the normal coordinate of the section centroid is t exactly
  const Vec mean = sum / static_cast<double>(hits);
  s.centroid = t * x + Q * mean;
  const Vec var = (sumsq / static_cast<double>(hits) - mean.cwiseProduct(mean)).cwiseMax(0.0);
  s.centroid_stderr = Vec((Q.cwiseProduct(Q) * var / static_cast<double>(hits)).cwiseSqrt());
  s.moment = s.measure * s.centroid;
  return s;
}

}  // namespace centrosec
