#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "centrosec/body.hpp"

namespace centrosec {

/// Orthonormal basis (n x (n-1)) of the hyperplane x^perp.
///
/// Gram-Schmidt on the standard basis, with the axis of the largest |x_k|
/// left out, so the chart is a deterministic function of x and is identical
/// for x and -x.
Mat tangent_chart(const Vec& x);

/// x / |x|; throws InvalidArgument on a zero vector.
Vec normalized(const Vec& x);

/// x - <x, z> z for unit z.
inline Vec project_tangent(const Vec& z, const Vec& x) { return x - z.dot(x) * z; }

/// Angle between the lines spanned by unit a and b, in [0, pi/2].
double projective_angle(const Vec& a, const Vec& b);

/// Antipodal representative whose first non-negligible coordinate is positive.
Vec canonical_direction(const Vec& z);

/// Deterministic low-discrepancy points on S^{n-1}: equispaced angles for
/// n = 2, a spherical Fibonacci lattice for n = 3, and a Halton sequence
/// pushed through the normal quantile function otherwise.
std::vector<Vec> low_discrepancy_sphere(int dim, int count);

/// Icosahedral mesh of S^2 refined until it has at least `min_vertices`
/// vertices.
struct SphereMesh {
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> neighbors;
};
SphereMesh icosphere(int min_vertices);

/// SplitMix64 finaliser; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

using Rng = std::mt19937_64;
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) { return Rng(mix_seed(seed, stream)); }

Vec random_unit(Rng& rng, int dim);

}  // namespace centrosec
