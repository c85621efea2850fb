#include "centrosec/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "centrosec/error.hpp"
#include "centrosec/sphere.hpp"

namespace centrosec::poly {

namespace {

// Calls fn(indices) for every k-subset of {0, ..., m-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int m, int k, Fn&& fn) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int affine_rank(const Mat& pts, const std::vector<int>& rows, double tol) {
  if (rows.size() < 2) return 0;
  Mat diff(rows.size() - 1, pts.cols());
  for (std::size_t i = 1; i < rows.size(); ++i) diff.row(i - 1) = pts.row(rows[i]) - pts.row(rows[0]);
  Eigen::FullPivLU<Mat> lu(diff);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

// Append unless a row within tol already exists.
bool push_unique(std::vector<Vec>& rows, const Vec& v, double tol) {
  for (const auto& r : rows)
    if ((r - v).lpNorm<Eigen::Infinity>() <= tol) return false;
  rows.push_back(v);
  return true;
}

Mat stack(const std::vector<Vec>& rows, int dim) {
  Mat M(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) M.row(i) = rows[i].transpose();
  return M;
}

// Area and centroid of the convex polygon spanned by the rows of `pts`
// (points in convex position), ordered by angle around their mean.
Moments polygon_moments(const Mat& pts, const Vec& mean) {
  const int k = static_cast<int>(pts.rows());
  std::vector<std::pair<double, int>> order(k);
  for (int i = 0; i < k; ++i) order[i] = {std::atan2(pts(i, 1) - mean(1), pts(i, 0) - mean(0)), i};
  std::sort(order.begin(), order.end());
  double area = 0.0, cx = 0.0, cy = 0.0;
  for (int i = 0; i < k; ++i) {
    // relative to the mean to limit cancellation
    const int p = order[i].second, q = order[(i + 1) % k].second;
    const double px = pts(p, 0) - mean(0), py = pts(p, 1) - mean(1);
    const double qx = pts(q, 0) - mean(0), qy = pts(q, 1) - mean(1);
    const double cr = px * qy - qx * py;
    area += cr;
    cx += (px + qx) * cr;
    cy += (py + qy) * cr;
  }
  Moments m{0.5 * area, mean};
  if (m.volume > 0.0) {
    m.centroid(0) += cx / (3.0 * area);
    m.centroid(1) += cy / (3.0 * area);
  } else {
    m.volume = 0.0;
  }
  return m;
}

using Incidence = std::vector<std::vector<char>>;  // [row][vertex]

// Cone decomposition in local coordinates. Rows of A/b and V are local;
// `rows` and `verts` map them to the indices of the incidence table, which
// is computed once for the whole recursion.
Moments cone_moments(const Mat& A, const Vec& b, const std::vector<int>& rows, const Mat& V,
                     const std::vector<int>& verts, const Incidence& inc) {
  const int d = static_cast<int>(V.cols());
  const int k = static_cast<int>(V.rows());
  Moments out{0.0, Vec::Zero(d)};
  if (k == 0) return out;
  const Vec c = V.colwise().mean().transpose();
  if (d == 1) {
    const double lo = V.minCoeff(), hi = V.maxCoeff();
    out.volume = hi - lo;
    out.centroid(0) = 0.5 * (lo + hi);
    return out;
  }
  if (k <= d) {  // too few points to span a d-polytope
    out.centroid = c;
    return out;
  }
  if (d == 2) return polygon_moments(V, c);

  std::set<std::vector<int>> seen;
  Vec acc = Vec::Zero(d);
  std::vector<int> on;
  const int m = static_cast<int>(rows.size());
  for (int j = 0; j < m; ++j) {
    const auto& incj = inc[rows[j]];
    on.clear();
    for (int i = 0; i < k; ++i)
      if (incj[verts[i]]) on.push_back(i);
    if (static_cast<int>(on.size()) < d) continue;
    const double na = A.row(j).norm();
    if (na < 1e-14) continue;
    if (!seen.insert(on).second) continue;
    const Vec a = A.row(j).transpose() / na;
    const double bj = b(j) / na;
    const double height = bj - a.dot(c);
    if (height <= 0.0) continue;

    if (static_cast<int>(on.size()) == d) {
      Mat E(d, d);
      Vec sum = Vec::Zero(d);
      for (int i = 0; i < d; ++i) {
        E.row(i) = V.row(on[i]) - c.transpose();
        sum += V.row(on[i]).transpose();
      }
      double fact = 1.0;
      for (int i = 2; i <= d; ++i) fact *= i;
      const double cone = std::abs(E.determinant()) / fact;
      acc += cone * (c + sum) / (d + 1);
      out.volume += cone;
      continue;
    }

    const Mat B = tangent_chart(a);
    const Vec p0 = bj * a;
    Mat W(on.size(), d - 1);
    std::vector<int> sub_verts(on.size());
    for (std::size_t i = 0; i < on.size(); ++i) {
      W.row(i).noalias() = (V.row(on[i]) - p0.transpose()) * B;
      sub_verts[i] = verts[on[i]];
    }
    // only rows touching at least d - 1 of the facet's vertices can bound a
    // face of it
    Mat Af(m, d - 1);
    Vec bf(m);
    std::vector<int> sub_rows;
    for (int l = 0; l < m; ++l) {
      if (l == j) continue;
      const auto& incl = inc[rows[l]];
      int touching = 0;
      for (int i : on) touching += incl[verts[i]];
      if (touching < d - 1) continue;
      const int r = static_cast<int>(sub_rows.size());
      Af.row(r).noalias() = A.row(l) * B;
      if (Af.row(r).norm() < 1e-12 * std::max(1.0, A.row(l).norm())) continue;
      bf(r) = b(l) - A.row(l).dot(p0);
      sub_rows.push_back(rows[l]);
    }
    const int r = static_cast<int>(sub_rows.size());
    const Moments sub = cone_moments(Af.topRows(r), bf.head(r), sub_rows, W, sub_verts, inc);
    if (sub.volume <= 0.0) continue;
    const double cone = height * sub.volume / d;
    const Vec facet_centroid = p0 + B * sub.centroid;
    acc += cone * (c + (static_cast<double>(d) / (d + 1)) * (facet_centroid - c));
    out.volume += cone;
  }
  out.centroid = out.volume > 0.0 ? Vec(acc / out.volume) : c;
  return out;
}

}  // namespace

Moments moments(const Mat& A, const Vec& b, const Mat& vertices, double tol) {
  const int m = static_cast<int>(A.rows());
  const int k = static_cast<int>(vertices.rows());
  const Mat D = A * vertices.transpose();
  Incidence inc(m, std::vector<char>(k, 0));
  for (int l = 0; l < m; ++l) {
    const double nl = A.row(l).norm();
    if (nl < 1e-14) continue;
    for (int i = 0; i < k; ++i) inc[l][i] = std::abs(D(l, i) - b(l)) <= tol * nl;
  }
  std::vector<int> rows(m), verts(k);
  for (int l = 0; l < m; ++l) rows[l] = l;
  for (int i = 0; i < k; ++i) verts[i] = i;
  return cone_moments(A, b, rows, vertices, verts, inc);
}

// Facet/vertex incidences, edges and volume for a known pair of facet and
// vertex lists. Facet rows that do not support an (n-1)-face are dropped.
PolytopeData complete(const Mat& A, const Vec& b, const Mat& V, double tol) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  const double bscale = b.maxCoeff();
  PolytopeData P;
  std::vector<int> keep;
  for (int j = 0; j < m; ++j) {
    std::vector<int> on;
    for (int i = 0; i < V.rows(); ++i)
      if (std::abs(V.row(i).dot(A.row(j)) - b(j)) <= tol) on.push_back(i);
    if (static_cast<int>(on.size()) >= n && affine_rank(V, on, 1e-9 * bscale) == n - 1) keep.push_back(j);
  }
  P.normals.resize(keep.size(), n);
  P.offsets.resize(keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    P.normals.row(j) = A.row(keep[j]);
    P.offsets(j) = b(keep[j]);
  }
  P.vertices = V;
  P.scale = V.rowwise().norm().maxCoeff();

  P.vertex_facets.resize(V.rows());
  for (int i = 0; i < V.rows(); ++i)
    for (int j = 0; j < P.normals.rows(); ++j)
      if (std::abs(V.row(i).dot(P.normals.row(j)) - P.offsets(j)) <= tol) P.vertex_facets[i].push_back(j);

  for (int i = 0; i < V.rows(); ++i) {
    for (int k = i + 1; k < V.rows(); ++k) {
      std::vector<int> common;
      std::set_intersection(P.vertex_facets[i].begin(), P.vertex_facets[i].end(), P.vertex_facets[k].begin(),
                            P.vertex_facets[k].end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) < n - 1) continue;
      Mat N(common.size(), n);
      for (std::size_t r = 0; r < common.size(); ++r) N.row(r) = P.normals.row(common[r]);
      Eigen::FullPivLU<Mat> lu(N);
      lu.setThreshold(1e-9);
      if (lu.rank() == n - 1) P.edges.emplace_back(i, k);
    }
  }
  P.volume = moments(P.normals, P.offsets, P.vertices, tol).volume;
  return P;
}

PolytopeData from_halfspaces(const Mat& A_in, const Vec& b_in) {
  const int n = static_cast<int>(A_in.cols());
  if (n < 2) throw InvalidArgument("polytope dimension must be at least 2");
  if (A_in.rows() != b_in.size()) throw InvalidArgument("normals and offsets differ in length");

  // normalize, close under negation, merge duplicates keeping the tighter offset
  std::vector<Vec> normals;
  std::vector<double> offsets;
  auto add = [&](const Vec& a, double off) {
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if ((normals[i] - a).lpNorm<Eigen::Infinity>() <= 1e-12) {
        offsets[i] = std::min(offsets[i], off);
        return;
      }
    }
    normals.push_back(a);
    offsets.push_back(off);
  };
  for (Eigen::Index i = 0; i < A_in.rows(); ++i) {
    const double na = A_in.row(i).norm();
    if (!(na > 0.0)) throw InvalidArgument("zero facet normal");
    const double off = b_in(i) / na;
    if (!(off > 0.0)) throw InvalidArgument("facet offsets must be positive");
    const Vec a = A_in.row(i).transpose() / na;
    add(a, off);
    add(-a, off);
  }
  const Mat A = stack(normals, n);
  const Vec b = Eigen::Map<const Vec>(offsets.data(), offsets.size());
  {
    Eigen::FullPivLU<Mat> lu(A);
    if (lu.rank() < n) throw InvalidArgument("facet normals do not span the space; polytope is unbounded");
  }

  const double bscale = b.maxCoeff();
  const double tol = 1e-10 * bscale;
  std::vector<Vec> verts;
  const int m = static_cast<int>(A.rows());
  for_each_subset(m, n, [&](const std::vector<int>& S) {
    Mat As(n, n);
    Vec bs(n);
    for (int i = 0; i < n; ++i) {
      As.row(i) = A.row(S[i]);
      bs(i) = b(S[i]);
    }
    Eigen::FullPivLU<Mat> lu(As);
    if (lu.rank() < n) return;
    const Vec x = lu.solve(bs);
    if (((A * x - b).array() > tol).any()) return;
    push_unique(verts, x, tol);
  });
  return complete(A, b, stack(verts, n), tol);
}

PolytopeData from_points(const Mat& points) {
  const int n = static_cast<int>(points.cols());
  if (n < 2) throw InvalidArgument("polytope dimension must be at least 2");
  std::vector<Vec> pts;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) scale = std::max(scale, points.row(i).norm());
  if (!(scale > 0.0)) throw InvalidArgument("vertex set spans only the origin");
  const double tol = 1e-10 * scale;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const Vec p = points.row(i).transpose();
    push_unique(pts, p, tol);
    push_unique(pts, Vec(-p), tol);
  }
  const Mat P = stack(pts, n);
  {
    Eigen::FullPivLU<Mat> lu(P);
    lu.setThreshold(1e-9);
    if (lu.rank() < n) throw InvalidArgument("vertex set does not span the space");
  }

  std::vector<Vec> normals;
  std::vector<double> offsets;
  const int m = static_cast<int>(P.rows());
  for_each_subset(m, n, [&](const std::vector<int>& S) {
    Mat diff(n - 1, n);
    for (int i = 1; i < n; ++i) diff.row(i - 1) = P.row(S[i]) - P.row(S[0]);
    Eigen::FullPivLU<Mat> lu(diff);
    lu.setThreshold(1e-9);
    if (lu.rank() < n - 1) return;
    Vec a = lu.kernel().col(0);
    a.normalize();
    double off = a.dot(P.row(S[0]));
    if (std::abs(off) <= tol) return;
    if (off < 0) {
      a = -a;
      off = -off;
    }
    if (((P * a).array() > off + tol).any()) return;
    for (const auto& r : normals)
      if ((r - a).lpNorm<Eigen::Infinity>() <= 1e-9) return;
    normals.push_back(a);
    offsets.push_back(off);
  });
  const Mat A = stack(normals, n);
  const Vec b = Eigen::Map<const Vec>(offsets.data(), offsets.size());
  // extreme points are those whose incident facet normals span R^n
  std::vector<Vec> verts;
  for (int i = 0; i < m; ++i) {
    std::vector<int> on;
    for (int j = 0; j < A.rows(); ++j)
      if (std::abs(P.row(i).dot(A.row(j)) - b(j)) <= tol) on.push_back(j);
    if (static_cast<int>(on.size()) < n) continue;
    Mat N(on.size(), n);
    for (std::size_t r = 0; r < on.size(); ++r) N.row(r) = A.row(on[r]);
    Eigen::FullPivLU<Mat> lu(N);
    lu.setThreshold(1e-9);
    if (lu.rank() == n) verts.push_back(P.row(i).transpose());
  }
  return complete(A, b, stack(verts, n), tol);
}

Mat slice_vertices(const PolytopeData& P, const Vec& x, double t) {
  const double tol = incidence_tol(P);
  const Vec h = P.vertices * x - Vec::Constant(P.vertices.rows(), t);
  std::vector<Vec> pts;
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (std::abs(h(i)) <= tol) push_unique(pts, P.vertices.row(i).transpose(), tol);
  for (const auto& [i, j] : P.edges) {
    const double hi = h(i), hj = h(j);
    if ((hi < -tol && hj > tol) || (hi > tol && hj < -tol)) {
      const double s = hi / (hi - hj);
      push_unique(pts, Vec(P.vertices.row(i).transpose() + s * (P.vertices.row(j) - P.vertices.row(i)).transpose()),
                  tol);
    }
  }
  return stack(pts, static_cast<int>(x.size()));
}

}  // namespace centrosec::poly
