#pragma once

#include <functional>
#include <optional>

#include "centrosec/body.hpp"
#include "centrosec/section.hpp"

namespace centrosec {

/// Threshold h on the sphere, given by its value and the ambient gradient of
/// its positively 1-homogeneous extension. For h = h_L the gradient is the
/// touch point of L; for a constant t it is t z.
struct Threshold {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;

  static Threshold support_of(const ConvexBody& L);
  static Threshold constant(double t);
};

struct FunctionalOptions {
  /// Required support gap h_K - h_L; negative selects 1e-6 * inradius(K).
  double margin = -1.0;
  /// Sections below this measure are degenerate; negative selects
  /// 1e-12 * vol(K)^((n-1)/n).
  double measure_floor = -1.0;
};

struct FunctionalEval {
  Vec direction;
  double f_value = 0.0;
  Vec touch_point;
  SectionData section;
  /// Riemannian gradient of f at the direction, lies in direction^perp.
  Vec tangential_gradient;
  /// |P_{z^perp}[centroid - touch_point]|, in length units.
  double residual = 0.0;
};

/// f(z) = vol{y in K : <y, z> >= h(z)}, the cap of K cut off by the
/// supporting hyperplane of L with outer normal z.
///
/// The gradient on the sphere is
///   grad f(z) = P_{z^perp}[ moment(K ∩ H) - measure(K ∩ H) * grad h(z) ],
/// using dV/dt = -measure. At a zero the section centroid is the touch point
/// of L, i.e. it lies on the boundary of L.
class CapFunctional {
 public:
  /// Validates that L is strictly convex and sits inside K with the margin;
  /// throws UnsupportedRepresentation or RejectedInstance otherwise.
  CapFunctional(ConvexBody K, ConvexBody L, FunctionalOptions options = {});
  /// General threshold; no containment check beyond positivity at use.
  CapFunctional(ConvexBody K, Threshold h, FunctionalOptions options = {});

  int dim() const { return K_.dim(); }
  const ConvexBody& outer() const { return K_; }
  const std::optional<ConvexBody>& inner() const { return L_; }
  double margin() const { return margin_; }
  double measure_floor() const { return floor_; }

  FunctionalEval evaluate(const Vec& z) const;
  /// Same, with f(z) already known.
  FunctionalEval evaluate(const Vec& z, double f_value) const;
  double value(const Vec& z) const;
  /// Normalized gradient field (grad f) / measure, i.e. the residual vector.
  Vec residual_vector(const Vec& z) const;

  /// Central differences of f along tangent_chart(z), retracting by
  /// normalization.
  Vec fd_tangential_gradient(const Vec& z, double step) const;

 private:
  Vec check_direction(const Vec& z) const;

  ConvexBody K_;
  std::optional<ConvexBody> L_;
  Threshold h_;
  double margin_ = 0.0;
  double floor_ = 0.0;
};

FunctionalEval evaluate(const ConvexBody& K, const ConvexBody& L, const Vec& z);
Vec fd_tangential_gradient(const ConvexBody& K, const ConvexBody& L, const Vec& z, double step);

}  // namespace centrosec
