#include <doctest.h>

#include <cmath>
#include <numbers>

#include "centrosec/body.hpp"
#include "centrosec/error.hpp"
#include "centrosec/families.hpp"
#include "centrosec/section.hpp"
#include "centrosec/sphere.hpp"
#include "oracles.hpp"

using namespace centrosec;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec e(int n, int i) { return Vec::Unit(n, i); }

bool within_sigma(double est, double se, double truth, double k = 3.0) { return std::abs(est - truth) <= k * se; }

std::vector<ConvexBody> exact_bodies(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed, n);
  Vec axes = Vec::LinSpaced(n, 0.6, 1.4);
  return {ConvexBody::ball(n, 1.0), ConvexBody::ellipsoid_from_axes(axes, random_rotation(rng, n)),
          ConvexBody::cube(n, 1.0), random_symmetric_vpolytope(rng, n, n + 3)};
}

// V-polygon as an oracle polygon.
std::vector<oracle::P2> as_polygon(const ConvexBody& K) {
  std::vector<oracle::P2> pts;
  const Mat& V = K.polytope().vertices;
  for (Eigen::Index i = 0; i < V.rows(); ++i) pts.push_back({V(i, 0), V(i, 1)});
  return oracle::hull(pts);
}

}  // namespace

TEST_CASE("ball and cube caps") {
  const auto B = ConvexBody::ball(3, 1.0);
  const Vec x = normalized(Vec::Ones(3));
  CHECK(cap_volume(B, Hyperplane(x, 0.0)) == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-14));
  const double ref = std::numbers::pi * 0.25 * 2.5 / 3;
  CHECK(ref == doctest::Approx(0.6544984694978736).epsilon(1e-15));
  CHECK(cap_volume(B, Hyperplane(x, 0.5)) == doctest::Approx(ref).epsilon(1e-13));
  const auto mc = mc_cap_volume(B, Hyperplane(x, 0.5), 10'000'000, 1);
  CHECK(within_sigma(mc.value, mc.std_error, ref));

  const auto C = ConvexBody::cube(3, 1.0);
  CHECK(cap_volume(C, Hyperplane(e(3, 0), 0.25)) == doctest::Approx(3.0).epsilon(1e-13));
  const auto mcc = mc_cap_volume(C, Hyperplane(e(3, 0), 0.25), 1'000'000, 2);
  CHECK(within_sigma(mcc.value, mcc.std_error, 3.0));
  CHECK(cap_volume(C, Hyperplane(e(3, 0), 2.0)) == 0.0);
  CHECK(cap_volume(C, Hyperplane(e(3, 0), -2.0)) == doctest::Approx(8.0));

  const auto D = ConvexBody::ball(2, 1.0);
  const auto mcd = mc_cap_volume(D, Hyperplane(e(2, 1), 0.0), 1'000'000, 3);
  CHECK(within_sigma(mcd.value, mcd.std_error, std::numbers::pi / 2));
  CHECK_THROWS_AS(mc_cap_volume(D, Hyperplane(e(2, 1), 0.0), 999, 3), InvalidArgument);
}

TEST_CASE("lp caps against quadrature") {
  const auto Lp = ConvexBody::lp_ball(2, 3.0, 1.0);
  const double ref = oracle::lp_cap_area_2d(3.0, 0.4);
  const auto mc = mc_cap_volume(Lp, Hyperplane(e(2, 0), 0.4), 1'000'000, 4);
  CHECK(within_sigma(mc.value, mc.std_error, ref));
  CHECK(std::abs(cap_volume(Lp, Hyperplane(e(2, 0), 0.4)) - ref) < 5e-3);
}

TEST_CASE("section examples") {
  const auto sq = ConvexBody::cube(2, 1.0);
  const auto s = section(sq, Hyperplane(e(2, 0), 0.3));
  CHECK(s.method == SectionMethod::Exact);
  CHECK(s.measure == doctest::Approx(2.0).epsilon(1e-13));
  CHECK((s.centroid - v2(0.3, 0)).norm() < 1e-13);

  const auto B = ConvexBody::ball(3, 1.0);
  const Vec x = normalized(Vec::LinSpaced(3, 1, 3));
  const auto sb = section(B, Hyperplane(x, 0.6));
  CHECK(sb.method == SectionMethod::Analytic);
  CHECK(sb.measure == doctest::Approx(0.64 * std::numbers::pi).epsilon(1e-13));
  CHECK((sb.centroid - 0.6 * x).norm() < 1e-13);

  const auto R = ConvexBody::v_polytope({v2(2, 1), v2(2, -1)});
  const Vec d = v2(1, 1) / std::sqrt(2.0);
  const auto sr = section(R, Hyperplane(d, 0.5));
  const auto [len, mid] = oracle::chord(as_polygon(R), d(0), d(1), 0.5);
  CHECK(len == doctest::Approx(2.8284271247461903).epsilon(1e-13));
  CHECK(sr.measure == doctest::Approx(len).epsilon(1e-12));
  CHECK((sr.centroid - v2(mid.x, mid.y)).norm() < 1e-12);
  CHECK((sr.centroid - v2(0.7071067811865479, 0)).norm() < 1e-12);

  Mat A = Mat::Zero(3, 3);
  A.diagonal() << 0.25, 1, 1;
  const auto se = section(ConvexBody::ellipsoid(A), Hyperplane(e(3, 0), 1.0));
  CHECK(se.measure == doctest::Approx(0.75 * std::numbers::pi).epsilon(1e-13));
  CHECK((se.centroid - e(3, 0)).norm() < 1e-13);
}

TEST_CASE("degenerate sections") {
  const auto C = ConvexBody::cube(3, 1.0);
  const auto s = section(C, Hyperplane(e(3, 2), 1.5));
  CHECK(s.measure == 0.0);
  CHECK_FALSE(s.has_centroid());
  CHECK(std::isnan(s.centroid(0)));
  const auto b = section(ConvexBody::ball(3, 1.0), Hyperplane(e(3, 2), -1.0));
  CHECK(b.measure == 0.0);
  CHECK_THROWS_AS(Hyperplane(v2(1, 1), 0.0), InvalidArgument);
  CHECK_THROWS_AS(section(C, Hyperplane(e(2, 0), 0.0)), InvalidArgument);
}

TEST_CASE("monte carlo sections") {
  const auto B = ConvexBody::ball(3, 1.0);
  const auto s = mc_section(B, Hyperplane(e(3, 2), 0.0), 1'000'000, 1e-3, 5);
  CHECK(s.method == SectionMethod::MonteCarlo);
  CHECK(within_sigma(s.measure, *s.measure_stderr, std::numbers::pi));
  for (int i = 0; i < 3; ++i) CHECK(within_sigma(s.centroid(i), (*s.centroid_stderr)(i) + 1e-300, 0.0));

  const auto C = ConvexBody::cube(3, 1.0);
  const auto c = mc_section(C, Hyperplane(e(3, 0), 0.5), 1'000'000, 1e-3, 6);
  CHECK(within_sigma(c.measure, *c.measure_stderr, 4.0));
  CHECK(c.centroid(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(within_sigma(c.centroid(1), (*c.centroid_stderr)(1), 0.0));
  CHECK(within_sigma(c.centroid(2), (*c.centroid_stderr)(2), 0.0));

  Mat A = Mat::Zero(3, 3);
  A.diagonal() << 0.25, 1, 1;
  const auto E = ConvexBody::ellipsoid(A);
  const auto ref = section(E, Hyperplane(e(3, 0), 1.0));
  const auto m = mc_section(E, Hyperplane(e(3, 0), 1.0), 1'000'000, default_slab_thickness(E), 7);
  CHECK(within_sigma(m.measure, *m.measure_stderr, ref.measure));
  CHECK(within_sigma(m.centroid(1), (*m.centroid_stderr)(1), ref.centroid(1)));

  const auto empty = mc_section(C, Hyperplane(e(3, 0), 3.0), 1000, 1e-3, 1);
  CHECK(empty.measure == 0.0);
  CHECK_FALSE(empty.has_centroid());
}

TEST_CASE("monte carlo is deterministic for a seed") {
  const auto B = ConvexBody::ball(3, 1.0);
  const auto a = mc_cap_volume(B, Hyperplane(e(3, 0), 0.2), 200000, 9);
  const auto b = mc_cap_volume(B, Hyperplane(e(3, 0), 0.2), 200000, 9);
  const auto c = mc_cap_volume(B, Hyperplane(e(3, 0), 0.2), 200000, 10);
  CHECK(a.value == b.value);
  CHECK(a.value != c.value);
}

TEST_CASE("t derivative is minus the section measure") {
  for (int n = 2; n <= 4; ++n) {
    Rng rng = make_rng(21, n);
    std::uniform_real_distribution<double> frac(-0.7, 0.7);
    for (const auto& K : exact_bodies(n, 100 + n)) {
      for (int i = 0; i < 5; ++i) {
        const Vec x = random_unit(rng, n);
        const double t = frac(rng) * K.support(x);
        const double h = 1e-5;
        const double fd = (cap_volume(K, Hyperplane(x, t + h)) - cap_volume(K, Hyperplane(x, t - h))) / (2 * h);
        const double m = section(K, Hyperplane(x, t)).measure;
        CHECK(std::abs(fd + m) <= 1e-4 * m);
      }
    }
  }
}

TEST_CASE("x gradient is the section moment") {
  for (int n = 2; n <= 4; ++n) {
    Rng rng = make_rng(22, n);
    std::uniform_real_distribution<double> frac(-0.7, 0.7);
    for (const auto& K : exact_bodies(n, 200 + n)) {
      for (int i = 0; i < 5; ++i) {
        const Vec x = random_unit(rng, n);
        const Vec w = normalized(project_tangent(x, random_unit(rng, n)));
        const double t = frac(rng) * K.support(x);
        const double h = 1e-5;
        const auto V = [&](double s) { return cap_volume(K, Hyperplane(normalized(std::cos(s) * x + std::sin(s) * w), t)); };
        const double fd = (V(h) - V(-h)) / (2 * h);
        const auto sec = section(K, Hyperplane(x, t));
        const double ref = sec.moment.dot(w);
        CHECK(std::abs(fd - ref) <= 1e-4 * std::max(std::abs(ref), sec.moment.norm()));
      }
    }
  }
}

TEST_CASE("section invariants, symmetry and complement") {
  for (int n = 2; n <= 4; ++n) {
    Rng rng = make_rng(23, n);
    std::uniform_real_distribution<double> frac(-0.9, 0.9);
    for (const auto& K : exact_bodies(n, 300 + n)) {
      for (int i = 0; i < 8; ++i) {
        const Vec x = random_unit(rng, n);
        const double t = frac(rng) * K.support(x);
        const Hyperplane H(x, t);
        const auto s = section(K, H);
        REQUIRE(s.has_centroid());
        CHECK(std::abs(s.centroid.dot(x) - t) < 1e-9);
        CHECK((s.moment - s.measure * s.centroid).norm() <= 1e-9 * s.moment.norm() + 1e-15);
        // mirror image {<x, y> = -t} of the plane
        const auto f = section(K, Hyperplane(-x, t));
        if (K.is_polytope()) {
          CHECK((s.centroid + f.centroid).norm() == 0.0);
          CHECK(s.measure == f.measure);
          CHECK((section(K, H.flipped()).centroid - s.centroid).norm() == 0.0);
        } else {
          CHECK((s.centroid + f.centroid).norm() < 1e-14);
        }
        const double total = cap_volume(K, H) + cap_volume(K, H.flipped());
        CHECK(std::abs(total - K.volume()) <= 1e-9 * K.volume());
        CHECK(cap_volume(K, Hyperplane(x, t + 0.01)) <= cap_volume(K, H));
      }
    }
  }
}

TEST_CASE("polygon caps and chords against clipping") {
  Rng rng = make_rng(24, 0);
  std::uniform_real_distribution<double> frac(-0.95, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const auto K = random_symmetric_vpolytope(rng, 2, 3 + trial % 6);
    const auto poly = as_polygon(K);
    for (int i = 0; i < 5; ++i) {
      const Vec x = random_unit(rng, 2);
      const double t = frac(rng) * K.support(x);
      const auto cap = oracle::polygon_moments(oracle::clip(poly, x(0), x(1), t));
      CHECK(cap_volume(K, Hyperplane(x, t)) == doctest::Approx(cap.area).epsilon(1e-11));
      const auto [len, mid] = oracle::chord(poly, x(0), x(1), t);
      const auto s = section(K, Hyperplane(x, t));
      CHECK(s.measure == doctest::Approx(len).epsilon(1e-11));
      CHECK((s.centroid - v2(mid.x, mid.y)).norm() < 1e-11);
    }
  }
}

TEST_CASE("h and v representations agree") {
  // the cube as an H-polytope and as a V-polytope
  for (int n = 2; n <= 4; ++n) {
    std::vector<Vec> verts;
    for (int m = 0; m < (1 << n); ++m) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v(i) = (m >> i & 1) ? 1.0 : -1.0;
      verts.push_back(v);
    }
    const auto H = ConvexBody::cube(n, 1.0);
    const auto V = ConvexBody::v_polytope(verts);
    Rng rng = make_rng(25, n);
    for (int i = 0; i < 10; ++i) {
      const Vec x = random_unit(rng, n);
      const Hyperplane P(x, 0.3 * H.support(x));
      CHECK(cap_volume(H, P) == doctest::Approx(cap_volume(V, P)).epsilon(1e-12));
      CHECK((section(H, P).centroid - section(V, P).centroid).norm() < 1e-12);
    }
  }
}
