#include "centrosec/body.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "centrosec/error.hpp"
#include "centrosec/polytope.hpp"
#include "centrosec/sphere.hpp"

namespace centrosec {

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::Ball: return "ball";
    case BodyKind::Ellipsoid: return "ellipsoid";
    case BodyKind::LpBall: return "lp";
    case BodyKind::HPolytope: return "hpolytope";
    case BodyKind::VPolytope: return "vpolytope";
  }
  return "unknown";
}

double unit_ball_volume(int dim) {
  return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

namespace {

// ||u||_q, computed after rescaling by max |u_i| to avoid overflow.
double lp_norm(const Vec& u, double q) {
  const double m = u.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) s += std::pow(std::abs(u(i)) / m, q);
  return m * std::pow(s, 1.0 / q);
}

}  // namespace

ConvexBody ConvexBody::ball(int dim, double radius) {
  if (dim < 2) throw InvalidArgument("dimension must be at least 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball radius must be positive");
  return ConvexBody(dim, BodyKind::Ball, Ball{radius});
}

ConvexBody ConvexBody::ellipsoid(const Mat& shape) {
  const int n = static_cast<int>(shape.rows());
  if (n < 2 || shape.cols() != n) throw InvalidArgument("ellipsoid shape must be square with dimension >= 2");
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() > 1e-12 * shape.cwiseAbs().maxCoeff())
    throw InvalidArgument("ellipsoid shape matrix must be symmetric");
  const Mat A = 0.5 * (shape + shape.transpose());
  Eigen::LLT<Mat> llt(A);
  if (llt.info() != Eigen::Success) throw InvalidArgument("ellipsoid shape matrix must be positive definite");
  Eigen::SelfAdjointEigenSolver<Mat> eig(A);
  if (eig.eigenvalues().minCoeff() <= 0.0) throw InvalidArgument("ellipsoid shape matrix must be positive definite");
  Mat inv = llt.solve(Mat::Identity(n, n));
  inv = 0.5 * (inv + inv.transpose());
  const double det = eig.eigenvalues().prod();
  return ConvexBody(n, BodyKind::Ellipsoid, Ellipsoid{A, inv, det});
}

ConvexBody ConvexBody::ellipsoid_from_axes(const Vec& semiaxes, const Mat& rotation) {
  const Eigen::Index n = semiaxes.size();
  if (rotation.rows() != n || rotation.cols() != n) throw InvalidArgument("rotation must be n x n");
  if ((rotation.transpose() * rotation - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw InvalidArgument("rotation must be orthogonal");
  if ((semiaxes.array() <= 0.0).any()) throw InvalidArgument("semiaxes must be positive");
  const Vec w = semiaxes.array().square().inverse();
  return ellipsoid(rotation * w.asDiagonal() * rotation.transpose());
}

ConvexBody ConvexBody::ellipsoid_from_axes(const Vec& semiaxes) {
  return ellipsoid_from_axes(semiaxes, Mat::Identity(semiaxes.size(), semiaxes.size()));
}

ConvexBody ConvexBody::lp_ball(int dim, double p, double scale) {
  if (dim < 2) throw InvalidArgument("dimension must be at least 2");
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("lp exponent must lie in (1, inf)");
  if (!(scale > 0.0)) throw InvalidArgument("lp scale must be positive");
  if (p < 1.2 || p > 12.0)
    std::cerr << "warning: lp ball with p = " << p << " is poorly conditioned (recommended range [1.2, 12])\n";
  return ConvexBody(dim, BodyKind::LpBall, LpBall{p, p / (p - 1.0), scale});
}

ConvexBody ConvexBody::h_polytope(const std::vector<Vec>& normals, const std::vector<double>& offsets) {
  if (normals.empty() || normals.size() != offsets.size()) throw InvalidArgument("need matching normals and offsets");
  const Eigen::Index n = normals.front().size();
  Mat A(normals.size(), n);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != n) throw InvalidArgument("facet normals differ in dimension");
    A.row(i) = normals[i].transpose();
  }
  Vec b = Eigen::Map<const Vec>(offsets.data(), offsets.size());
  auto data = std::make_shared<PolytopeData>(poly::from_halfspaces(A, b));
  return ConvexBody(static_cast<int>(n), BodyKind::HPolytope, Polytope(std::move(data)));
}

ConvexBody ConvexBody::v_polytope(const std::vector<Vec>& points) {
  if (points.empty()) throw InvalidArgument("need at least one vertex");
  const Eigen::Index n = points.front().size();
  Mat P(points.size(), n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw InvalidArgument("vertices differ in dimension");
    P.row(i) = points[i].transpose();
  }
  auto data = std::make_shared<PolytopeData>(poly::from_points(P));
  return ConvexBody(static_cast<int>(n), BodyKind::VPolytope, Polytope(std::move(data)));
}

ConvexBody ConvexBody::cube(int dim, double half_width) {
  if (dim < 2) throw InvalidArgument("dimension must be at least 2");
  std::vector<Vec> normals;
  std::vector<double> offsets;
  for (int i = 0; i < dim; ++i) {
    normals.push_back(Vec::Unit(dim, i));
    offsets.push_back(half_width);
  }
  return h_polytope(normals, offsets);
}

bool ConvexBody::strictly_convex() const noexcept {
  return kind_ == BodyKind::Ball || kind_ == BodyKind::Ellipsoid || kind_ == BodyKind::LpBall;
}

void ConvexBody::check_dim(const Vec& v) const {
  if (v.size() != dim_)
    throw InvalidArgument("dimension mismatch: body is " + std::to_string(dim_) + "-dimensional, vector has " +
                          std::to_string(v.size()) + " coordinates");
}

double ConvexBody::support(const Vec& u) const {
  check_dim(u);
  if (!(u.norm() > 0.0)) throw InvalidArgument("support: direction must be nonzero");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return r.radius * u.norm();
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return std::sqrt(u.dot(r.inverse * u));
        } else if constexpr (std::is_same_v<T, LpBall>) {
          return r.scale * lp_norm(u, r.q);
        } else {
          return (r->vertices * u).maxCoeff();
        }
      },
      rep_);
}

Vec ConvexBody::touch_point(const Vec& u) const {
  check_dim(u);
  if (!(u.norm() > 0.0)) throw InvalidArgument("touch_point: direction must be nonzero");
  return std::visit(
      [&](const auto& r) -> Vec {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return r.radius * u / u.norm();
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          const Vec w = r.inverse * u;
          return w / std::sqrt(u.dot(w));
        } else if constexpr (std::is_same_v<T, LpBall>) {
          // gradient of scale * ||u||_q
          const Vec v = u / u.cwiseAbs().maxCoeff();
          const double nq = lp_norm(v, r.q);
          Vec g(v.size());
          for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double a = std::abs(v(i));
            g(i) = a == 0.0 ? 0.0 : std::copysign(std::pow(a / nq, r.q - 1.0), v(i));
          }
          return r.scale * g;
        } else {
          throw UnsupportedRepresentation("touch point of a polytope is not unique in general");
        }
      },
      rep_);
}

double ConvexBody::gauge(const Vec& y) const {
  check_dim(y);
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return y.norm() / r.radius;
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return std::sqrt(std::max(0.0, y.dot(r.shape * y)));
        } else if constexpr (std::is_same_v<T, LpBall>) {
          return lp_norm(y, r.p) / r.scale;
        } else {
          return std::max(0.0, (r->normals * y).cwiseQuotient(r->offsets).maxCoeff());
        }
      },
      rep_);
}

double ConvexBody::volume() const {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return unit_ball_volume(dim_) * std::pow(r.radius, dim_);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return unit_ball_volume(dim_) / std::sqrt(r.det);
        } else if constexpr (std::is_same_v<T, LpBall>) {
          return std::exp(dim_ * std::log(2.0 * r.scale) + dim_ * std::lgamma(1.0 + 1.0 / r.p) -
                          std::lgamma(1.0 + dim_ / r.p));
        } else {
          return r->volume;
        }
      },
      rep_);
}

double ConvexBody::inradius() const {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return r.radius;
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          Eigen::SelfAdjointEigenSolver<Mat> eig(r.shape, Eigen::EigenvaluesOnly);
          return 1.0 / std::sqrt(eig.eigenvalues().maxCoeff());
        } else if constexpr (std::is_same_v<T, LpBall>) {
          // min of scale * ||u||_q over the unit sphere
          return r.p >= 2.0 ? r.scale : r.scale * std::pow(static_cast<double>(dim_), 0.5 - 1.0 / r.p);
        } else {
          return r->offsets.minCoeff();
        }
      },
      rep_);
}

double ConvexBody::circumradius() const {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return r.radius;
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          Eigen::SelfAdjointEigenSolver<Mat> eig(r.shape, Eigen::EigenvaluesOnly);
          return 1.0 / std::sqrt(eig.eigenvalues().minCoeff());
        } else if constexpr (std::is_same_v<T, LpBall>) {
          return r.p <= 2.0 ? r.scale : r.scale * std::pow(static_cast<double>(dim_), 0.5 - 1.0 / r.p);
        } else {
          return r->vertices.rowwise().norm().maxCoeff();
        }
      },
      rep_);
}

Vec ConvexBody::bounding_half_widths() const {
  Vec w(dim_);
  for (int i = 0; i < dim_; ++i) w(i) = support(Vec::Unit(dim_, i));
  return w;
}

ConvexBody ConvexBody::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw InvalidArgument("scale factor must be positive");
  return std::visit(
      [&](const auto& r) -> ConvexBody {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return ConvexBody(dim_, kind_, Ball{r.radius * lambda});
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          const double l2 = lambda * lambda;
          return ConvexBody(dim_, kind_, Ellipsoid{r.shape / l2, r.inverse * l2, r.det / std::pow(l2, dim_)});
        } else if constexpr (std::is_same_v<T, LpBall>) {
          return ConvexBody(dim_, kind_, LpBall{r.p, r.q, r.scale * lambda});
        } else {
          auto data = std::make_shared<PolytopeData>(*r);
          data->offsets *= lambda;
          data->vertices *= lambda;
          data->volume *= std::pow(lambda, dim_);
          data->scale *= lambda;
          return ConvexBody(dim_, kind_, Polytope(std::move(data)));
        }
      },
      rep_);
}

double ConvexBody::radius() const {
  if (auto r = std::get_if<Ball>(&rep_)) return r->radius;
  throw UnsupportedRepresentation("radius() requires a ball");
}

const Mat& ConvexBody::shape() const {
  if (auto r = std::get_if<Ellipsoid>(&rep_)) return r->shape;
  throw UnsupportedRepresentation("shape() requires an ellipsoid");
}

double ConvexBody::lp_exponent() const {
  if (auto r = std::get_if<LpBall>(&rep_)) return r->p;
  throw UnsupportedRepresentation("lp_exponent() requires an lp ball");
}

double ConvexBody::lp_scale() const {
  if (auto r = std::get_if<LpBall>(&rep_)) return r->scale;
  throw UnsupportedRepresentation("lp_scale() requires an lp ball");
}

const PolytopeData& ConvexBody::polytope() const {
  if (auto r = std::get_if<Polytope>(&rep_)) return **r;
  throw UnsupportedRepresentation("polytope() requires a polytope");
}

int default_net_size(int dim) { return dim <= 4 ? 4096 : 1024 * dim; }

namespace {

void append_extreme_directions(const ConvexBody& body, std::vector<Vec>& dirs) {
  const int n = body.dim();
  for (int i = 0; i < n; ++i) dirs.push_back(Vec::Unit(n, i));
  switch (body.kind()) {
    case BodyKind::Ball: break;
    case BodyKind::Ellipsoid: {
      Eigen::SelfAdjointEigenSolver<Mat> eig(body.shape());
      for (int i = 0; i < n; ++i) dirs.push_back(eig.eigenvectors().col(i));
      break;
    }
    case BodyKind::LpBall: {
      // diagonal directions, one per antipodal sign pattern
      if (n <= 12) {
        for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
          Vec v = Vec::Ones(n);
          for (int i = 1; i < n; ++i)
            if (mask & (1 << (i - 1))) v(i) = -1.0;
          dirs.push_back(v.normalized());
        }
      }
      break;
    }
    case BodyKind::HPolytope:
    case BodyKind::VPolytope: {
      const auto& P = body.polytope();
      for (Eigen::Index i = 0; i < P.normals.rows(); ++i) dirs.push_back(P.normals.row(i).transpose());
      for (Eigen::Index i = 0; i < P.vertices.rows(); ++i) dirs.push_back(P.vertices.row(i).transpose().normalized());
      break;
    }
  }
}

}  // namespace

double min_support_gap(const ConvexBody& outer, const ConvexBody& inner, int net_size) {
  if (outer.dim() != inner.dim()) throw InvalidArgument("contains_body: bodies differ in dimension");
  const int n = outer.dim();
  std::vector<Vec> dirs = low_discrepancy_sphere(n, net_size > 0 ? net_size : default_net_size(n));
  append_extreme_directions(outer, dirs);
  append_extreme_directions(inner, dirs);
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& u : dirs) gap = std::min(gap, outer.support(u) - inner.support(u));
  return gap;
}

bool contains_body(const ConvexBody& outer, const ConvexBody& inner, double margin, int net_size) {
  return min_support_gap(outer, inner, net_size) >= margin;
}

}  // namespace centrosec
