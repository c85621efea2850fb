#include <doctest.h>

#include <cmath>
#include <numbers>

#include "centrosec/body.hpp"
#include "centrosec/error.hpp"
#include "centrosec/sphere.hpp"
#include "oracles.hpp"

using namespace centrosec;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

std::vector<ConvexBody> zoo(int n) {
  Rng rng = make_rng(7, n);
  std::vector<Vec> pts;
  for (int i = 0; i < n + 3; ++i) pts.push_back(random_unit(rng, n));
  Vec axes = Vec::LinSpaced(n, 0.5, 1.5);
  return {ConvexBody::ball(n, 1.3), ConvexBody::ellipsoid_from_axes(axes), ConvexBody::lp_ball(n, 3.5, 0.8),
          ConvexBody::lp_ball(n, 1.6, 1.1), ConvexBody::cube(n, 0.7), ConvexBody::v_polytope(pts)};
}

}  // namespace

TEST_CASE("support examples") {
  CHECK(support(ConvexBody::ball(2, 1.0), v2(0, 1)) == doctest::Approx(1.0));
  Mat A = Mat::Zero(2, 2);
  A.diagonal() << 0.25, 1.0;
  CHECK(support(ConvexBody::ellipsoid(A), v2(1, 0)) == doctest::Approx(2.0));

  const ConvexBody sq = ConvexBody::v_polytope({v2(1, 1), v2(1, -1)});
  const double th = std::numbers::pi / 6;
  // max over the four vertices, enumerated by hand: (1,1) wins
  CHECK(sq.support(v2(std::cos(th), std::sin(th))) == doctest::Approx(1.3660254037844386).epsilon(1e-14));
  CHECK_THROWS_AS(sq.support(v2(0, 0)), InvalidArgument);
}

TEST_CASE("touch points") {
  const ConvexBody B = ConvexBody::ball(3, 0.4);
  const Vec u = normalized(v3(1, -2, 0.5));
  CHECK((B.touch_point(u) - 0.4 * u).norm() < 1e-14);

  Mat A(2, 2);
  A << 0.5, 0.1, 0.1, 2.0;
  const ConvexBody E = ConvexBody::ellipsoid(A);
  const Vec w = normalized(v2(0.3, 0.8));
  const Vec Ainv_w = A.inverse() * w;
  CHECK((E.touch_point(w) - Ainv_w / std::sqrt(w.dot(Ainv_w))).norm() < 1e-12);

  const ConvexBody Lp = ConvexBody::lp_ball(2, 4.0, 1.0);
  const Vec d = v2(1, 1) / std::sqrt(2.0);
  const Vec y = Lp.touch_point(d);
  CHECK(std::abs(y.dot(d) - Lp.support(d)) < 1e-10);
  CHECK(std::abs(Lp.gauge(y) - 1.0) < 1e-10);
  const oracle::P2 ref = oracle::lp_touch_2d(4.0, {d(0), d(1)});
  CHECK(std::hypot(y(0) - ref.x, y(1) - ref.y) < 1e-6);

  const Vec d2 = normalized(v2(0.9, 0.2));
  const oracle::P2 ref2 = oracle::lp_touch_2d(4.0, {d2(0), d2(1)});
  const Vec y2 = Lp.touch_point(d2);
  CHECK(std::hypot(y2(0) - ref2.x, y2(1) - ref2.y) < 1e-6);

  CHECK_THROWS_AS(ConvexBody::cube(2, 1.0).touch_point(d), UnsupportedRepresentation);
}

TEST_CASE("gauge examples") {
  CHECK(gauge(ConvexBody::ball(2, 2.0), v2(0, 1)) == doctest::Approx(0.5));
  CHECK(gauge(ConvexBody::cube(3, 1.0), v3(0.5, -1, 0.25)) == doctest::Approx(1.0));
  CHECK(gauge(ConvexBody::cube(3, 1.0), Vec::Zero(3)) == 0.0);

  Mat A = Mat::Zero(2, 2);
  A.diagonal() << 0.25, 1.0;
  const ConvexBody E = ConvexBody::ellipsoid(A);
  const Vec y = v2(1, 0.5);
  const double ref = oracle::gauge_by_bisection([&](double lam) { return E.contains(y / lam, 0.0); });
  CHECK(E.gauge(y) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(std::abs(E.gauge(y) - ref) < 1e-12);

  const ConvexBody P = ConvexBody::v_polytope({v2(2, 0.5), v2(-0.3, 1.2), v2(1, 1)});
  const Vec q = v2(0.7, -0.4);
  const double ref_p = oracle::gauge_by_bisection([&](double lam) {
    const Vec z = q / lam;
    const Mat& N = P.polytope().normals;
    return ((N * z).array() <= P.polytope().offsets.array()).all();
  });
  CHECK(std::abs(P.gauge(q) - ref_p) < 1e-12);
}

TEST_CASE("containment") {
  CHECK(contains_body(ConvexBody::ball(3, 1.0), ConvexBody::ball(3, 0.5), 0.0));
  for (int n = 2; n <= 4; ++n) CHECK_FALSE(contains_body(ConvexBody::ball(n, 1.0), ConvexBody::cube(n, 1.0), 0.0));

  const ConvexBody sq = ConvexBody::cube(2, 1.0);
  const ConvexBody E = ConvexBody::ellipsoid_from_axes(v2(0.9, 0.5));
  CHECK(contains_body(sq, E, 0.05));
  // gap h_K - h_E over a fine angular scan, from the closed forms
  double gap = 1e9;
  for (int k = 0; k < 200000; ++k) {
    const double th = 2 * std::numbers::pi * k / 200000;
    const double c = std::cos(th), s = std::sin(th);
    gap = std::min(gap, std::abs(c) + std::abs(s) - std::sqrt(0.81 * c * c + 0.25 * s * s));
  }
  CHECK(gap == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(min_support_gap(sq, E) == doctest::Approx(gap).epsilon(1e-6));
  CHECK_FALSE(contains_body(sq, E, 0.11));
  CHECK_THROWS_AS(contains_body(sq, ConvexBody::ball(3, 0.1), 0.0), InvalidArgument);
}

TEST_CASE("inradius") {
  CHECK(inradius_lower_bound(ConvexBody::ball(4, 0.3)) == doctest::Approx(0.3));
  for (int n = 2; n <= 4; ++n) CHECK(inradius_lower_bound(ConvexBody::cube(n, 1.0)) == doctest::Approx(1.0));

  std::vector<Vec> hex;
  std::vector<oracle::P2> hex2;
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3;
    hex.push_back(v2(std::cos(a), std::sin(a)));
    hex2.push_back({std::cos(a), std::sin(a)});
  }
  // apothem from the edge lines of the vertex list
  double apothem = 1e9;
  for (int k = 0; k < 6; ++k) {
    const auto p = hex2[k], q = hex2[(k + 1) % 6];
    apothem = std::min(apothem, std::abs(p.x * q.y - q.x * p.y) / std::hypot(q.x - p.x, q.y - p.y));
  }
  const ConvexBody H = ConvexBody::v_polytope(hex);
  CHECK(H.inradius() == doctest::Approx(apothem).epsilon(1e-12));
  CHECK(H.inradius() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(contains_body(H, ConvexBody::ball(2, H.inradius() * (1 - 1e-9)), 0.0));

  Mat A = Mat::Zero(3, 3);
  A.diagonal() << 1.0 / 4, 1.0, 1.0 / 9;
  CHECK(ConvexBody::ellipsoid(A).inradius() == doctest::Approx(1.0));
  CHECK(ConvexBody::lp_ball(3, 4.0, 1.0).inradius() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ConvexBody::lp_ball(3, 4.0, 1.0).circumradius() == doctest::Approx(std::pow(3.0, 0.5 - 0.25)).epsilon(1e-12));
  CHECK(ConvexBody::lp_ball(3, 1.5, 1.0).inradius() == doctest::Approx(std::pow(3.0, 0.5 - 1 / 1.5)).epsilon(1e-12));
}

TEST_CASE("evenness and homogeneity") {
  for (int n = 2; n <= 4; ++n) {
    Rng rng = make_rng(11, n);
    for (const auto& body : zoo(n)) {
      for (int i = 0; i < 10000 / (n * 6); ++i) {
        const Vec u = random_unit(rng, n);
        CHECK(body.support(u) == body.support(-u));
        const Vec y = 0.9 * u;
        CHECK(body.gauge(y) == body.gauge(-y));
        const double lam = 0.1 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
        CHECK(std::abs(body.support(lam * u) - lam * body.support(u)) <= 1e-12 * lam * body.support(u));
        CHECK(body.contains(y) == (body.gauge(y) <= 1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("touch point consistency and support gradient") {
  for (int n = 2; n <= 4; ++n) {
    Rng rng = make_rng(12, n);
    for (const auto& body : zoo(n)) {
      if (!body.strictly_convex()) {
        CHECK_THROWS_AS(body.touch_point(Vec::Unit(n, 0)), UnsupportedRepresentation);
        continue;
      }
      for (int i = 0; i < 40; ++i) {
        const Vec u = random_unit(rng, n);
        const Vec y = body.touch_point(u);
        CHECK(std::abs(y.dot(u) - body.support(u)) < 1e-10);
        CHECK(std::abs(body.gauge(y) - 1.0) < 1e-8);
        Vec fd(n);
        const double h = 1e-5;
        for (int k = 0; k < n; ++k) {
          const Vec e = Vec::Unit(n, k);
          fd(k) = (body.support(u + h * e) - body.support(u - h * e)) / (2 * h);
        }
        CHECK((fd - y).cwiseAbs().maxCoeff() < 1e-5);
      }
    }
  }
}

TEST_CASE("strict convexity and validation") {
  CHECK(ConvexBody::ball(2, 1).strictly_convex());
  CHECK(ConvexBody::lp_ball(2, 3, 1).strictly_convex());
  CHECK_FALSE(ConvexBody::cube(2, 1).strictly_convex());
  CHECK_THROWS_AS(ConvexBody::ball(2, -1), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::ball(1, 1), InvalidArgument);
  Mat A(2, 2);
  A << 1, 2, 2, 1;
  CHECK_THROWS_AS(ConvexBody::ellipsoid(A), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::lp_ball(2, 1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::v_polytope({v2(1, 1), v2(2, 2)}), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::h_polytope({v2(1, 0)}, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::h_polytope({v2(1, 0), v2(0, 1)}, {1.0, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(ConvexBody::ball(2, 1).support(v3(1, 0, 0)), InvalidArgument);
}

TEST_CASE("volumes") {
  CHECK(ConvexBody::ball(3, 1).volume() == doctest::Approx(4 * std::numbers::pi / 3));
  CHECK(ConvexBody::cube(4, 1).volume() == doctest::Approx(16.0));
  CHECK(ConvexBody::ellipsoid_from_axes(v3(1, 2, 3)).volume() == doctest::Approx(8 * std::numbers::pi));
  // |x|^p + |y|^p <= 1 has area 4 Gamma(1+1/p)^2 / Gamma(1+2/p)
  const double p = 3.0;
  const double area = 4 * std::pow(std::tgamma(1 + 1 / p), 2) / std::tgamma(1 + 2 / p);
  CHECK(ConvexBody::lp_ball(2, p, 1.0).volume() == doctest::Approx(area).epsilon(1e-12));
  std::vector<Vec> hex;
  for (int k = 0; k < 3; ++k) hex.push_back(v2(std::cos(k * std::numbers::pi / 3), std::sin(k * std::numbers::pi / 3)));
  CHECK(ConvexBody::v_polytope(hex).volume() == doctest::Approx(3 * std::sqrt(3.0) / 2).epsilon(1e-12));
}
