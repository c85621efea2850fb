#include "centrosec/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "centrosec/error.hpp"

namespace centrosec {

std::string to_string(Family f) {
  switch (f) {
    case Family::PolytopeInEllipsoidHull: return "polytope_in_ellipsoid_hull";
    case Family::EllipsoidInPolytope: return "ellipsoid_in_polytope";
    case Family::LpInBall: return "lp_in_ball";
  }
  return "unknown";
}

Family parse_family(const std::string& s) {
  if (s == "polytope_in_ellipsoid_hull") return Family::PolytopeInEllipsoidHull;
  if (s == "ellipsoid_in_polytope") return Family::EllipsoidInPolytope;
  if (s == "lp_in_ball") return Family::LpInBall;
  throw InvalidArgument("unknown family '" + s +
                        "' (expected polytope_in_ellipsoid_hull, ellipsoid_in_polytope or lp_in_ball)");
}

Mat random_rotation(Rng& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(G);
  Mat Q = qr.householderQ();
  const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  return Q;
}

namespace {

Vec log_uniform(Rng& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::exp(u(rng));
  return v;
}

}  // namespace

ConvexBody random_ellipsoid(Rng& rng, int dim, double lo, double hi) {
  const Vec axes = log_uniform(rng, dim, lo, hi);
  return ConvexBody::ellipsoid_from_axes(axes, random_rotation(rng, dim));
}

ConvexBody random_symmetric_vpolytope(Rng& rng, int dim, int points) {
  std::uniform_real_distribution<double> radius(0.8, 1.2);
  std::vector<Vec> pts;
  for (int i = 0; i < points; ++i) pts.push_back(radius(rng) * random_unit(rng, dim));
  return ConvexBody::v_polytope(pts);
}

double max_inner_scale(const ConvexBody& K, const ConvexBody& L, double margin) {
  const int n = K.dim();
  std::vector<Vec> dirs = low_discrepancy_sphere(n, default_net_size(n));
  if (K.is_polytope()) {
    const auto& P = K.polytope();
    for (Eigen::Index i = 0; i < P.normals.rows(); ++i) dirs.push_back(P.normals.row(i).transpose());
  }
  for (int i = 0; i < n; ++i) dirs.push_back(Vec::Unit(n, i));
  double s = std::numeric_limits<double>::infinity();
  for (const auto& u : dirs) s = std::min(s, (K.support(u) - margin) / L.support(u));
  return s;
}

Instance generate_instance(Family family, int dim, std::uint64_t seed) {
  if (dim < 2) throw InvalidArgument("dimension must be at least 2");
  Rng rng = make_rng(seed, 1);
  std::uniform_real_distribution<double> shrink(0.6, 0.95);
  auto fit_inside = [&](const ConvexBody& K, const ConvexBody& L0) {
    const double margin = 0.02 * K.inradius();
    // the net is finite, so keep a little slack on top of the margin
    const double s = max_inner_scale(K, L0, 1.5 * margin) * shrink(rng);
    return L0.scaled(s);
  };
  std::uniform_int_distribution<int> extra(0, dim);

  switch (family) {
    case Family::PolytopeInEllipsoidHull: {
      const ConvexBody E = random_ellipsoid(rng, dim, 0.6, 1.4);
      const int k = dim + 1 + extra(rng);
      std::vector<Vec> pts;
      for (int i = 0; i < k; ++i) pts.push_back(E.touch_point(random_unit(rng, dim)));
      ConvexBody K = ConvexBody::v_polytope(pts);
      ConvexBody L = fit_inside(K, random_ellipsoid(rng, dim, 0.3, 1.0));
      return {std::move(K), std::move(L)};
    }
    case Family::EllipsoidInPolytope: {
      const int k = dim + 1 + extra(rng);
      std::uniform_real_distribution<double> off(0.8, 1.2);
      std::vector<Vec> normals;
      std::vector<double> offsets;
      for (int i = 0; i < dim; ++i) {  // keeps the polytope bounded
        normals.push_back(Vec::Unit(dim, i) + 0.3 * random_unit(rng, dim));
        offsets.push_back(off(rng));
      }
      for (int i = dim; i < k; ++i) {
        normals.push_back(random_unit(rng, dim));
        offsets.push_back(off(rng));
      }
      ConvexBody K = ConvexBody::h_polytope(normals, offsets);
      ConvexBody L = fit_inside(K, random_ellipsoid(rng, dim, 0.3, 1.0));
      return {std::move(K), std::move(L)};
    }
    case Family::LpInBall: {
      std::uniform_real_distribution<double> pdist(1.5, 6.0);
      ConvexBody K = ConvexBody::ball(dim, 1.0);
      ConvexBody L = fit_inside(K, ConvexBody::lp_ball(dim, pdist(rng), 1.0));
      return {std::move(K), std::move(L)};
    }
  }
  throw InvalidArgument("unknown family");
}

}  // namespace centrosec
