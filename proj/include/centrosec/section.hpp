#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "centrosec/body.hpp"

namespace centrosec {

/// H_{t,x} = {y : <x, y> = t} with |x| = 1.
class Hyperplane {
 public:
  Hyperplane(Vec direction, double offset);

  const Vec& direction() const noexcept { return direction_; }
  double offset() const noexcept { return offset_; }
  Hyperplane flipped() const { return Hyperplane(-direction_, -offset_); }

 private:
  Vec direction_;
  double offset_;
};

enum class SectionMethod { Exact, Analytic, MonteCarlo };

std::string to_string(SectionMethod m);

/// (n-1)-measure, first moment and centroid of K ∩ H.
///
/// When the section is degenerate (measure 0) the centroid is NaN and
/// has_centroid() is false.
struct SectionData {
  double measure = 0.0;
  Vec centroid;
  Vec moment;
  SectionMethod method = SectionMethod::Exact;
  std::optional<double> measure_stderr;
  std::optional<Vec> centroid_stderr;

  bool has_centroid() const { return measure > 0.0; }
};

/// Unit-ball cap volume vol{u in B^n : u_1 >= s}.
double unit_ball_cap(int dim, double s);

/// V(t, x) = vol{y in K : <y, x> >= t}. Exact for polytopes, closed form for
/// balls and ellipsoids, Monte Carlo (10^6 samples, fixed seed) for lp balls.
double cap_volume(const ConvexBody& K, const Hyperplane& H);

SectionData section(const ConvexBody& K, const Hyperplane& H);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

inline constexpr std::int64_t kDefaultMcSamples = 1'000'000;

/// Rejection-sampled cap volume over the bounding box of K.
McEstimate mc_cap_volume(const ConvexBody& K, const Hyperplane& H, std::int64_t samples, std::uint64_t seed);

/// Thin-slab estimate: vol(K ∩ {|<x,y> - t| <= thickness/2}) / thickness and
/// the mean of the sampled points. The slab bias is O(thickness^2).
SectionData mc_section(const ConvexBody& K, const Hyperplane& H, std::int64_t samples, double thickness,
                       std::uint64_t seed);

/// 1e-3 * diam(K).
double default_slab_thickness(const ConvexBody& K);

}  // namespace centrosec
