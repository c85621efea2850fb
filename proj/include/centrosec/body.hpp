#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace centrosec {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class BodyKind { Ball, Ellipsoid, LpBall, HPolytope, VPolytope };

std::string to_string(BodyKind kind);

/// Combinatorial description shared by both polytope representations.
///
/// Rows of `normals` are unit outer facet normals with `offsets > 0`; rows of
/// `vertices` are the extreme points. Both lists are closed under negation.
/// `edges` holds index pairs into `vertices`, and `vertex_facets[i]` the
/// sorted facet indices incident to vertex i.
struct PolytopeData {
  Mat normals;
  Vec offsets;
  Mat vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> vertex_facets;
  double volume = 0.0;
  double scale = 1.0;  // max vertex norm, used for tolerances
};

/// Origin-symmetric convex body in one of the closed-form representations.
///
/// Values are immutable; copies share the (possibly large) polytope tables.
class ConvexBody {
 public:
  static ConvexBody ball(int dim, double radius);
  /// {x : x^T A x <= 1} for symmetric positive definite A.
  static ConvexBody ellipsoid(const Mat& shape);
  /// Ellipsoid with the given semiaxes along the columns of `rotation`.
  static ConvexBody ellipsoid_from_axes(const Vec& semiaxes, const Mat& rotation);
  static ConvexBody ellipsoid_from_axes(const Vec& semiaxes);
  /// {x : ||x||_p <= scale}.
  static ConvexBody lp_ball(int dim, double p, double scale);
  /// Facets <a_i, x> <= b_i. Normals are normalized and the list is closed
  /// under negation; redundant inequalities are dropped.
  static ConvexBody h_polytope(const std::vector<Vec>& normals, const std::vector<double>& offsets);
  /// conv(±points). Non-extreme points are dropped.
  static ConvexBody v_polytope(const std::vector<Vec>& points);
  /// [-half_width, half_width]^dim as an H-polytope.
  static ConvexBody cube(int dim, double half_width);

  int dim() const noexcept { return dim_; }
  BodyKind kind() const noexcept { return kind_; }
  bool strictly_convex() const noexcept;
  bool is_polytope() const noexcept { return kind_ == BodyKind::HPolytope || kind_ == BodyKind::VPolytope; }

  double support(const Vec& u) const;
  Vec touch_point(const Vec& u) const;
  double gauge(const Vec& y) const;
  bool contains(const Vec& y, double tol = 1e-12) const { return gauge(y) <= 1.0 + tol; }

  double volume() const;
  double inradius() const;
  double circumradius() const;
  /// Half-widths of the axis-aligned bounding box (support at ±e_i).
  Vec bounding_half_widths() const;

  ConvexBody scaled(double lambda) const;

  // Representation parameters.
  double radius() const;          // Ball
  const Mat& shape() const;       // Ellipsoid
  double lp_exponent() const;     // LpBall
  double lp_scale() const;        // LpBall
  const PolytopeData& polytope() const;

 private:
  struct Ball {
    double radius;
  };
  struct Ellipsoid {
    Mat shape;
    Mat inverse;
    double det;
  };
  struct LpBall {
    double p;
    double q;
    double scale;
  };
  using Polytope = std::shared_ptr<const PolytopeData>;

  ConvexBody(int dim, BodyKind kind, std::variant<Ball, Ellipsoid, LpBall, Polytope> rep)
      : dim_(dim), kind_(kind), rep_(std::move(rep)) {}

  void check_dim(const Vec& v) const;

  int dim_;
  BodyKind kind_;
  std::variant<Ball, Ellipsoid, LpBall, Polytope> rep_;
};

// Free-function forms of the body queries.
inline double support(const ConvexBody& body, const Vec& u) { return body.support(u); }
inline Vec support_touch_point(const ConvexBody& body, const Vec& u) { return body.touch_point(u); }
inline double gauge(const ConvexBody& body, const Vec& y) { return body.gauge(y); }
inline double inradius_lower_bound(const ConvexBody& body) { return body.inradius(); }

/// Direction net used by contains_body: 2^12 points for n <= 4, scaled
/// linearly with dimension beyond that.
int default_net_size(int dim);

/// Conservative containment test: checks h_inner(u) <= h_outer(u) - margin on
/// a deterministic direction net plus the extreme directions of both
/// representations. Exact when `outer` is a polytope.
bool contains_body(const ConvexBody& outer, const ConvexBody& inner, double margin, int net_size = 0);

/// Smallest support gap h_outer(u) - h_inner(u) over the same direction set.
double min_support_gap(const ConvexBody& outer, const ConvexBody& inner, int net_size = 0);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int dim);

}  // namespace centrosec
