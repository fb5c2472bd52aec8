#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "hilbert/polytope.hpp"

namespace hilbert {

/// [a, p, q, b] = (|q - a| / |p - a|) * (|p - b| / |q - b|) for four collinear
/// points met in the order a, p, q, b.
inline double cross_ratio(const Vector& a, const Vector& p, const Vector& q, const Vector& b,
                          double eps = kEpsGeom) {
  const Vector chord = b - a;
  const double len = chord.norm();
  if (len <= eps) throw Error(ErrorCode::BadOrdering, "chord endpoints coincide");
  const Vector u = chord / len;
  auto off_line = [&](const Vector& x) {
    const Vector d = x - a;
    return (d - d.dot(u) * u).norm();
  };
  if (off_line(p) > eps * std::max(1.0, len) || off_line(q) > eps * std::max(1.0, len)) {
    throw Error(ErrorCode::NotCollinear, "cross-ratio points are not collinear");
  }
  const double tp = (p - a).dot(u);
  const double tq = (q - a).dot(u);
  if (!(tp > eps && tq - tp > eps && len - tq > eps)) {
    throw Error(ErrorCode::BadOrdering, "points must be ordered a, p, q, b and distinct");
  }
  return ((q - a).norm() / (p - a).norm()) * ((p - b).norm() / (q - b).norm());
}

/// Hilbert distance and Finsler norm on the interior of a polytope.
class HilbertStructure {
 public:
  explicit HilbertStructure(Polytope poly) : poly_(std::move(poly)) {}

  const Polytope& polytope() const { return poly_; }

  /// d(p, q) = 1/2 ln [a, p, q, b], where a is the chord end beyond p and b
  /// the one beyond q. Evaluated as 1/2 log1p([a,p,q,b] - 1) with
  /// [a,p,q,b] - 1 = |pq| (|ap| + |qb| + |pq|) / (|ap| |qb|), which is the
  /// same quantity without cancellation for nearby points. The expression is
  /// symmetric in the two chord ends, so d(p, q) == d(q, p) bit for bit.
  double distance(const Vector& p, const Vector& q) const {
    poly_.require_interior(p);
    poly_.require_interior(q);
    const Vector step = q - p;
    const double gap = step.norm();
    if (gap <= poly_.eps()) return 0.0;
    const double to_a = ray_exit(poly_, p, p - q).t_plus * gap;
    const double to_b = ray_exit(poly_, q, q - p).t_plus * gap;
    return 0.5 * std::log1p(gap * (to_a + to_b + gap) / (to_a * to_b));
  }

  /// F(p, v) = 1/2 |v| (1/|p - p^-| + 1/|p - p^+|).
  double finsler_norm(const Vector& p, const Vector& v) const {
    poly_.require_interior(p);
    if (v.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "tangent dimension");
    if (v.squaredNorm() == 0.0) return 0.0;
    // |p - p^+| = t^+ |v|, so the |v| factors cancel.
    const double forward = ray_exit(poly_, p, v).t_plus;
    const double backward = ray_exit(poly_, p, -v).t_plus;
    return 0.5 * (1.0 / forward + 1.0 / backward);
  }

 private:
  Polytope poly_;
};

inline double distance(const HilbertStructure& h, const Vector& p, const Vector& q) {
  return h.distance(p, q);
}

inline double finsler_norm(const HilbertStructure& h, const Vector& p, const Vector& v) {
  return h.finsler_norm(p, v);
}

/// Projective transformation of R^n given by an (n+1)x(n+1) matrix acting on
/// homogeneous coordinates (x, 1).
class ProjectiveMap {
 public:
  explicit ProjectiveMap(Matrix m, double eps = kEpsGeom) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2) {
      throw Error(ErrorCode::InvalidArgument, "projective map must be square of size n+1 >= 2");
    }
    if (!(std::abs(m_.determinant()) > eps)) {
      throw Error(ErrorCode::InvalidArgument, "projective map is singular");
    }
  }

  Eigen::Index dimension() const { return m_.rows() - 1; }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

inline Vector apply_projective(const ProjectiveMap& map, const Vector& x, double eps = kEpsGeom) {
  const auto n = map.dimension();
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "projective map dimension");
  Vector h(n + 1);
  h << x, 1.0;
  const Vector image = map.matrix() * h;
  const double w = image(n);
  if (!(std::abs(w) > eps)) throw Error(ErrorCode::PointAtInfinity, "image lies at infinity");
  return image.head(n) / w;
}

/// Image of a polytope under a projective map that keeps it away from the
/// hyperplane at infinity (all homogeneous weights of one sign).
inline Polytope apply_projective(const ProjectiveMap& map, const Polytope& poly) {
  const auto n = map.dimension();
  std::vector<Vector> image;
  double sign = 0.0;
  for (const auto& v : poly.vertices()) {
    Vector h(n + 1);
    h << v, 1.0;
    const double w = map.matrix().row(n).dot(h);
    if (sign == 0.0) sign = w > 0 ? 1.0 : -1.0;
    if (!(w * sign > poly.eps())) {
      throw Error(ErrorCode::PointAtInfinity, "projective map sends the polytope across infinity");
    }
    image.push_back(apply_projective(map, v, poly.eps()));
  }
  return build_polytope(image, poly.eps());
}

}  // namespace hilbert
