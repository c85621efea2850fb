#pragma once

#include "centrosec/body.hpp"

namespace centrosec::poly {

struct Moments {
  double volume = 0.0;
  Vec centroid;
};

/// Volume and centroid of the d-polytope {y : A y <= b} whose vertices are
/// the rows of `vertices` (d = vertices.cols()).
///
/// Cone decomposition from the vertex mean over every facet, recursing into
/// each facet in an orthonormal chart of its supporting hyperplane. Facets are
/// identified by their incident vertex sets, so repeated or redundant
/// inequalities are counted once. `tol` is an absolute incidence tolerance.
Moments moments(const Mat& A, const Vec& b, const Mat& vertices, double tol);

/// Complete the double description of {x : A x <= b}. Rows of A need not be
/// normalized; negated copies are added.
PolytopeData from_halfspaces(const Mat& A, const Vec& b);

/// Double description of conv(±rows of points).
PolytopeData from_points(const Mat& points);

/// Vertices of P ∩ {y : <x, y> = t}: polytope vertices on the plane plus
/// crossings of edges that straddle it.
Mat slice_vertices(const PolytopeData& P, const Vec& x, double t);

/// Incidence tolerance used for a polytope of the given scale.
inline double incidence_tol(const PolytopeData& P) { return 1e-10 * P.scale; }

}  // namespace centrosec::poly
