#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hilbert/error.hpp"
#include "hilbert/linalg.hpp"

namespace hilbert {

/// The set {x : normal . x <= offset}, with |normal| = 1.
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  double slack(const Vector& x) const { return offset - normal.dot(x); }
};

enum class Location { Interior, Boundary, Outside };

struct RayExit {
  double t_plus;
  Vector boundary_point;
  std::size_t facet_id;
};

/// Full-dimensional convex polytope in R^n with both vertex and halfspace
/// descriptions. Immutable; build with build_polytope().
class Polytope {
 public:
  int dimension() const { return dimension_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  /// Sorted vertex indices lying on each facet.
  const std::vector<std::vector<int>>& incidence() const { return incidence_; }
  double eps() const { return eps_; }

  /// Vertex mean.
  const Vector& barycenter() const { return barycenter_; }

  double min_slack(const Vector& x) const {
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& h : facets_) slack = std::min(slack, h.slack(x));
    return slack;
  }

  bool is_interior(const Vector& x, double margin = kEpsInt) const {
    return x.size() == dimension_ && min_slack(x) > margin;
  }

  void require_interior(const Vector& x) const {
    if (x.size() != dimension_) {
      throw Error(ErrorCode::DimensionMismatch, "point dimension " + std::to_string(x.size()) +
                                                    " vs polytope dimension " +
                                                    std::to_string(dimension_));
    }
    if (!x.allFinite() || min_slack(x) <= kEpsInt) {
      throw Error(ErrorCode::PointNotInterior, "point is not strictly inside the polytope");
    }
  }

  std::pair<Vector, Vector> bounding_box() const {
    Vector lo = vertices_.front(), hi = vertices_.front();
    for (const auto& v : vertices_) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    return {lo, hi};
  }

 private:
  friend Polytope build_polytope(std::span<const Vector>, double);

  int dimension_ = 0;
  std::vector<Vector> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<std::vector<int>> incidence_;
  Vector barycenter_;
  double eps_ = kEpsGeom;
};

namespace detail {

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k > n || k <= 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(std::span<const int>(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

inline Matrix as_columns(std::span<const Vector> points) {
  Matrix m(points.front().size(), static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = points[i];
  return m;
}

}  // namespace detail

/// Convex hull of `points` as a Polytope. Duplicate and non-extreme input
/// points are dropped; the surviving vertices keep their input order.
/// Facets are found by brute force over n-subsets of the points and sorted
/// lexicographically by incidence set.
inline Polytope build_polytope(std::span<const Vector> points, double eps = kEpsGeom) {
  if (points.empty()) throw Error(ErrorCode::NotFullDimensional, "no vertices");
  const auto n = points.front().size();
  if (n < 1) throw Error(ErrorCode::DegenerateInput, "zero-dimensional coordinates");
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorCode::DegenerateInput, "inconsistent vertex dimensions");
    if (!p.allFinite()) throw Error(ErrorCode::DegenerateInput, "non-finite vertex coordinate");
  }

  std::vector<Vector> pts;
  for (const auto& p : points) {
    const bool dup = std::any_of(pts.begin(), pts.end(),
                                 [&](const Vector& q) { return (p - q).norm() <= eps; });
    if (!dup) pts.push_back(p);
  }
  if (pts.size() < static_cast<std::size_t>(n + 1) ||
      affine_rank(detail::as_columns(pts), eps) < n) {
    throw Error(ErrorCode::NotFullDimensional, "vertex set has affine rank below " +
                                                   std::to_string(n));
  }

  const int count = static_cast<int>(pts.size());
  std::map<std::vector<int>, Halfspace> by_incidence;
  detail::for_each_combination(count, static_cast<int>(n), [&](std::span<const int> subset) {
    // Solve normal . v - offset = 0 for the subset's points.
    Matrix system(n, n + 1);
    for (Eigen::Index r = 0; r < n; ++r) {
      system.row(r).head(n) = pts[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])];
      system(r, n) = -1.0;
    }
    Eigen::FullPivLU<Matrix> lu(system);
    lu.setThreshold(eps);
    if (lu.dimensionOfKernel() != 1) return;
    Vector k = lu.kernel().col(0);
    const double norm = k.head(n).norm();
    if (norm <= eps) return;
    Halfspace h{k.head(n) / norm, k(n) / norm};

    bool below = true, above = true;
    std::vector<int> on;
    for (int i = 0; i < count; ++i) {
      const double s = h.slack(pts[static_cast<std::size_t>(i)]);
      if (s < -eps) below = false;
      if (s > eps) above = false;
      if (std::abs(s) <= eps) on.push_back(i);
    }
    if (!below && !above) return;
    if (!below) h = Halfspace{-h.normal, -h.offset};
    by_incidence.try_emplace(std::move(on), std::move(h));
  });

  // Extreme points are those whose incident facet normals span R^n.
  std::vector<int> new_index(static_cast<std::size_t>(count), -1);
  std::vector<Vector> vertices;
  for (int i = 0; i < count; ++i) {
    std::vector<Vector> normals;
    for (const auto& [on, h] : by_incidence) {
      if (std::binary_search(on.begin(), on.end(), i)) normals.push_back(h.normal);
    }
    if (normals.size() < static_cast<std::size_t>(n)) continue;
    Eigen::FullPivLU<Matrix> lu(detail::as_columns(normals));
    lu.setThreshold(eps);
    if (lu.rank() == n) {
      new_index[static_cast<std::size_t>(i)] = static_cast<int>(vertices.size());
      vertices.push_back(pts[static_cast<std::size_t>(i)]);
    }
  }

  std::vector<std::pair<std::vector<int>, Halfspace>> facets;
  for (const auto& [on, h] : by_incidence) {
    std::vector<int> remapped;
    for (int i : on) {
      if (new_index[static_cast<std::size_t>(i)] >= 0) {
        remapped.push_back(new_index[static_cast<std::size_t>(i)]);
      }
    }
    facets.emplace_back(std::move(remapped), h);
  }
  std::sort(facets.begin(), facets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Polytope poly;
  poly.dimension_ = static_cast<int>(n);
  poly.eps_ = eps;
  poly.vertices_ = std::move(vertices);
  for (auto& [on, h] : facets) {
    poly.incidence_.push_back(std::move(on));
    poly.facets_.push_back(std::move(h));
  }
  poly.barycenter_ = Vector::Zero(n);
  for (const auto& v : poly.vertices_) poly.barycenter_ += v;
  poly.barycenter_ /= static_cast<double>(poly.vertices_.size());
  return poly;
}

inline Polytope build_polytope(const std::vector<Vector>& points, double eps = kEpsGeom) {
  return build_polytope(std::span<const Vector>(points), eps);
}

inline Location contains(const Polytope& poly, const Vector& x, double tol) {
  if (x.size() != poly.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match polytope");
  }
  const double slack = poly.min_slack(x);
  if (slack > tol) return Location::Interior;
  if (slack >= -tol) return Location::Boundary;
  return Location::Outside;
}

/// First boundary hit of the ray p + t v, t > 0.
inline RayExit ray_exit(const Polytope& poly, const Vector& p, const Vector& v) {
  poly.require_interior(p);
  if (v.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "direction dimension");
  if (!v.allFinite() || v.squaredNorm() == 0.0) {
    throw Error(ErrorCode::ZeroDirection, "ray direction must be nonzero and finite");
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_facet = 0;
  const auto& facets = poly.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const double rate = facets[i].normal.dot(v);
    if (rate <= 0.0) continue;
    const double t = facets[i].slack(p) / rate;
    if (t < best) {
      best = t;
      best_facet = i;
    }
  }
  if (!std::isfinite(best)) {
    // Unreachable for a bounded polytope unless v underflows every rate.
    throw Error(ErrorCode::ZeroDirection, "ray does not leave the polytope");
  }
  return RayExit{best, p + best * v, best_facet};
}

}  // namespace hilbert
