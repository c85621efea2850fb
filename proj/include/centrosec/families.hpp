#pragma once

#include <cstdint>
#include <string>

#include "centrosec/body.hpp"
#include "centrosec/sphere.hpp"

namespace centrosec {

/// Random (K, L) families for the census.
///
/// - PolytopeInEllipsoidHull: K = conv(±p_i) with p_i on the surface of a
///   random ellipsoid, L a random ellipsoid inside K.
/// - EllipsoidInPolytope: K a random symmetric H-polytope, L a random
///   ellipsoid inside K.
/// - LpInBall: K the unit ball, L an axis-aligned lp ball inside it.
///
/// Ellipsoids are random rotations of log-uniform semiaxes. L is rescaled so
/// the support gap to K is at least 0.02 * inradius(K).
enum class Family { PolytopeInEllipsoidHull, EllipsoidInPolytope, LpInBall };

std::string to_string(Family f);
Family parse_family(const std::string& s);

struct Instance {
  ConvexBody K;
  ConvexBody L;
};

Instance generate_instance(Family family, int dim, std::uint64_t seed);

/// Haar-distributed rotation (QR of a Gaussian matrix with sign fix).
Mat random_rotation(Rng& rng, int dim);

/// Random ellipsoid with log-uniform semiaxes in [lo, hi].
ConvexBody random_ellipsoid(Rng& rng, int dim, double lo, double hi);

/// Random symmetric V-polytope conv(±p_i), p_i on the unit sphere scaled by
/// a radius drawn from [0.8, 1.2].
ConvexBody random_symmetric_vpolytope(Rng& rng, int dim, int points);

/// Largest lambda with h_{lambda L}(u) <= h_K(u) - margin on the containment
/// direction set.
double max_inner_scale(const ConvexBody& K, const ConvexBody& L, double margin);

}  // namespace centrosec
