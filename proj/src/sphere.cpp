#include "centrosec/sphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <boost/math/special_functions/erf.hpp>

#include "centrosec/error.hpp"

namespace centrosec {

Mat tangent_chart(const Vec& x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw InvalidArgument("tangent_chart: dimension must be at least 2");
  Eigen::Index skip = 0;
  x.cwiseAbs().maxCoeff(&skip);
  const Vec u = x / x.norm();
  Mat Q(n, n - 1);
  int col = 0;
  for (int k = 0; k < n; ++k) {
    if (k == skip) continue;
    Vec e = Vec::Zero(n);
    e(k) = 1.0;
    Vec w = e - u.dot(e) * u;
    for (int j = 0; j < col; ++j) w -= Q.col(j).dot(w) * Q.col(j);
    // second pass keeps the basis orthonormal to machine precision
    w -= u.dot(w) * u;
    for (int j = 0; j < col; ++j) w -= Q.col(j).dot(w) * Q.col(j);
    Q.col(col++) = w / w.norm();
  }
  return Q;
}

Vec normalized(const Vec& x) {
  const double r = x.norm();
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
  return x / r;
}

double projective_angle(const Vec& a, const Vec& b) {
  const double c = std::min(1.0, std::abs(a.dot(b)));
  // acos loses accuracy near 0; use the chord length instead
  const double chord = std::min((a - b).norm(), (a + b).norm());
  return c > 0.9 ? 2.0 * std::asin(std::min(1.0, chord / 2.0)) : std::acos(c);
}

Vec canonical_direction(const Vec& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > 1e-9) return z(i) > 0 ? Vec(z) : Vec(-z);
  }
  return z;
}

namespace {

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

}  // namespace

std::vector<Vec> low_discrepancy_sphere(int dim, int count) {
  std::vector<Vec> out;
  out.reserve(std::max(count, 0));
  const double pi = std::numbers::pi;
  if (dim == 2) {
    // offset by half a cell so that no point sits on a coordinate axis
    for (int k = 0; k < count; ++k) {
      const double th = 2.0 * pi * (k + 0.5) / count;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      out.push_back(v);
    }
  } else if (dim == 3) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < count; ++k) {
      const double zc = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
      const double phi = 2.0 * pi * std::fmod(k / golden, 1.0);
      Vec v(3);
      v << r * std::cos(phi), r * std::sin(phi), zc;
      out.push_back(v);
    }
  } else {
    if (dim > static_cast<int>(std::size(kPrimes))) throw InvalidArgument("low_discrepancy_sphere: dimension too large");
    for (int k = 0; k < count; ++k) {
      Vec v(dim);
      for (int i = 0; i < dim; ++i) {
        const double u = radical_inverse(static_cast<std::uint64_t>(k) + 1, kPrimes[i]);
        v(i) = std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
      }
      out.push_back(normalized(v));
    }
  }
  return out;
}

SphereMesh icosphere(int min_vertices) {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0}, {0, -1, g}, {0, 1, g},
      {0, -1, -g}, {0, 1, -g}, {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
      {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  while (static_cast<int>(verts.size()) < min_vertices) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      verts.push_back((verts[a] + verts[b]).normalized());
      const int id = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }
  SphereMesh mesh;
  std::vector<std::set<int>> adj(verts.size());
  for (const auto& f : faces) {
    for (int i = 0; i < 3; ++i) {
      adj[f[i]].insert(f[(i + 1) % 3]);
      adj[f[i]].insert(f[(i + 2) % 3]);
    }
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    mesh.vertices.emplace_back(Vec(verts[i]));
    mesh.neighbors.emplace_back(adj[i].begin(), adj[i].end());
  }
  return mesh;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vec random_unit(Rng& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

}  // namespace centrosec
