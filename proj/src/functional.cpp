#include "centrosec/functional.hpp"

#include <cmath>
#include <sstream>

#include "centrosec/error.hpp"
#include "centrosec/sphere.hpp"

namespace centrosec {

Threshold Threshold::support_of(const ConvexBody& L) {
  return {[L](const Vec& z) { return L.support(z); }, [L](const Vec& z) { return L.touch_point(z); }};
}

Threshold Threshold::constant(double t) {
  if (!(t > 0.0)) throw InvalidArgument("threshold must be positive");
  return {[t](const Vec&) { return t; }, [t](const Vec& z) -> Vec { return t * z; }};
}

namespace {

double default_floor(const ConvexBody& K) {
  const int n = K.dim();
  return 1e-12 * std::pow(K.volume(), (n - 1.0) / n);
}

std::string describe(const Vec& z) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index i = 0; i < z.size(); ++i) os << (i ? ", " : "") << z(i);
  os << ")";
  return os.str();
}

}  // namespace

CapFunctional::CapFunctional(ConvexBody K, ConvexBody L, FunctionalOptions options)
    : K_(std::move(K)), L_(std::move(L)), h_(Threshold::support_of(*L_)) {
  if (K_.dim() != L_->dim()) throw InvalidArgument("K and L differ in dimension");
  if (!L_->strictly_convex())
    throw UnsupportedRepresentation("L must be strictly convex (ball, ellipsoid or lp ball); got " +
                                    to_string(L_->kind()));
  margin_ = options.margin >= 0.0 ? options.margin : 1e-6 * K_.inradius();
  floor_ = options.measure_floor >= 0.0 ? options.measure_floor : default_floor(K_);
  const double gap = min_support_gap(K_, *L_);
  if (gap < margin_) {
    std::ostringstream os;
    os << "containment margin violated: min support gap " << gap << " < required " << margin_;
    throw RejectedInstance(os.str());
  }
}

CapFunctional::CapFunctional(ConvexBody K, Threshold h, FunctionalOptions options)
    : K_(std::move(K)), h_(std::move(h)) {
  margin_ = options.margin >= 0.0 ? options.margin : 1e-6 * K_.inradius();
  floor_ = options.measure_floor >= 0.0 ? options.measure_floor : default_floor(K_);
}

Vec CapFunctional::check_direction(const Vec& z) const {
  if (z.size() != K_.dim()) throw InvalidArgument("direction has wrong dimension");
  if (std::abs(z.norm() - 1.0) > 1e-10) throw InvalidArgument("direction must be a unit vector");
  return z / z.norm();
}

double CapFunctional::value(const Vec& z_in) const {
  const Vec z = check_direction(z_in);
  return cap_volume(K_, Hyperplane(z, h_.value(z)));
}

FunctionalEval CapFunctional::evaluate(const Vec& z_in) const {
  FunctionalEval e = evaluate(z_in, 0.0);
  e.f_value = cap_volume(K_, Hyperplane(e.direction, h_.value(e.direction)));
  return e;
}

FunctionalEval CapFunctional::evaluate(const Vec& z_in, double f_value) const {
  FunctionalEval e;
  e.direction = check_direction(z_in);
  const Vec& z = e.direction;
  const double t = h_.value(z);
  const Hyperplane H(z, t);
  e.touch_point = h_.gradient(z);
  e.section = section(K_, H);
  if (!(e.section.measure > floor_))
    throw DegenerateSection("degenerate section at direction " + describe(z) + " (measure " +
                            std::to_string(e.section.measure) + ")");
  e.f_value = f_value;
  e.tangential_gradient = project_tangent(z, e.section.moment - e.section.measure * e.touch_point);
  e.residual = project_tangent(z, e.section.centroid - e.touch_point).norm();
  return e;
}

Vec CapFunctional::residual_vector(const Vec& z_in) const {
  const Vec z = check_direction(z_in);
  const SectionData s = section(K_, Hyperplane(z, h_.value(z)));
  if (!(s.measure > floor_)) throw DegenerateSection("degenerate section at direction " + describe(z));
  return project_tangent(z, s.centroid - h_.gradient(z));
}

Vec CapFunctional::fd_tangential_gradient(const Vec& z_in, double step) const {
  if (!(step >= 1e-7 && step <= 1e-3)) throw InvalidArgument("finite-difference step must lie in [1e-7, 1e-3]");
  const Vec z = check_direction(z_in);
  const Mat B = tangent_chart(z);
  Vec g = Vec::Zero(z.size());
  for (Eigen::Index j = 0; j < B.cols(); ++j) {
    const Vec zp = normalized(z + step * B.col(j));
    const Vec zm = normalized(z - step * B.col(j));
    // normalize(z + h w) sits at geodesic distance atan(h)
    const double d = (value(zp) - value(zm)) / (2.0 * std::atan(step));
    g += d * B.col(j);
  }
  return g;
}

FunctionalEval evaluate(const ConvexBody& K, const ConvexBody& L, const Vec& z) {
  return CapFunctional(K, L).evaluate(z);
}

Vec fd_tangential_gradient(const ConvexBody& K, const ConvexBody& L, const Vec& z, double step) {
  return CapFunctional(K, L).fd_tangential_gradient(z, step);
}

}  // namespace centrosec
