#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hilbert/hilbert_metric.hpp"

namespace hilbert {

/// Interior point of the standard simplex H_n = conv(e_1, ..., e_{n+1}) in
/// R^{n+1}: strictly positive coordinates summing to 1.
class SimplexPoint {
 public:
  explicit SimplexPoint(Vector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw Error(ErrorCode::InvalidArgument, "simplex point needs n+1 >= 2 coordinates");
    if (!coords_.allFinite() || (coords_.array() <= 0.0).any()) {
      throw Error(ErrorCode::PointNotInterior, "simplex point coordinates must be positive");
    }
    if (std::abs(coords_.sum() - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "simplex point coordinates must sum to 1");
    }
  }

  /// Rescales positive weights onto the simplex.
  static SimplexPoint normalized(const Vector& weights) {
    return SimplexPoint(weights / weights.sum());
  }

  int dimension() const { return static_cast<int>(coords_.size()) - 1; }
  const Vector& coords() const { return coords_; }
  double operator[](Eigen::Index i) const { return coords_(i); }

 private:
  Vector coords_;
};

/// Point of W_n = {X in R^{n+1} : X_1 + ... + X_{n+1} = 0}.
class WPoint {
 public:
  explicit WPoint(Vector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw Error(ErrorCode::InvalidArgument, "W_n point needs n+1 >= 2 coordinates");
    if (!coords_.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite W_n point");
    const double scale = std::max(1.0, coords_.cwiseAbs().maxCoeff());
    if (std::abs(coords_.sum()) > 1e-10 * scale) {
      throw Error(ErrorCode::InvalidArgument, "W_n point coordinates must sum to 0");
    }
  }

  static WPoint zero(int n) { return WPoint(Vector::Zero(n + 1)); }

  int dimension() const { return static_cast<int>(coords_.size()) - 1; }
  const Vector& coords() const { return coords_; }
  double operator[](Eigen::Index i) const { return coords_(i); }

  friend WPoint operator-(const WPoint& a, const WPoint& b) { return WPoint(a.coords_ - b.coords_); }
  friend WPoint operator+(const WPoint& a, const WPoint& b) { return WPoint(a.coords_ + b.coords_); }
  friend WPoint operator*(double s, const WPoint& a) { return WPoint(s * a.coords_); }

 private:
  Vector coords_;
};

/// The standard cell-simplex S_n: vertex k has 1/(k+1) in its first k+1
/// coordinates and 0 elsewhere. Equivalently S_n = {x in H_n : x_1 >= ... >= x_{n+1}}.
struct StandardCell {
  int dimension = 0;
  std::vector<Vector> vertices;
};

/// The standard cell-cone, phi(S_n): generator k has n-k in its first k+1
/// coordinates and -(k+1) in the remaining n-k.
struct StandardCone {
  int dimension = 0;
  std::vector<Vector> generators;
};

inline StandardCell standard_cell(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "standard cell needs n >= 1");
  StandardCell cell{n, {}};
  for (int k = 0; k <= n; ++k) {
    Vector v = Vector::Zero(n + 1);
    v.head(k + 1).setConstant(1.0 / (k + 1));
    cell.vertices.push_back(std::move(v));
  }
  return cell;
}

inline StandardCone standard_cone(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "standard cone needs n >= 1");
  StandardCone cone{n, {}};
  for (int k = 0; k < n; ++k) {
    Vector g(n + 1);
    g.head(k + 1).setConstant(n - k);
    g.tail(n - k).setConstant(-(k + 1));
    cone.generators.push_back(std::move(g));
  }
  return cone;
}

/// Logarithmic chart of the simplex: X_i = ln(x_i / g), g the geometric mean.
inline WPoint phi(const SimplexPoint& x) {
  const Vector logs = x.coords().unaryExpr([](double v) { return std::log(v); });
  return WPoint((logs.array() - logs.mean()).matrix());
}

/// Inverse of phi: softmax, shifted by the largest coordinate.
inline SimplexPoint phi_inv(const WPoint& X) {
  const Vector& c = X.coords();
  const double top = c.maxCoeff();
  const Vector w = c.unaryExpr([top](double v) { return std::exp(v - top); });
  if ((w.array() <= 0.0).any()) {
    throw Error(ErrorCode::Overflow, "W_n point too far out: simplex coordinate underflows");
  }
  const double total = w.sum();
  Vector x = w / total;
  // One correction keeps the sum within an ulp or two of 1.
  x /= x.sum();
  return SimplexPoint(std::move(x));
}

/// Polyhedral norm on W_n: half the spread of the coordinates.
inline double dlh_norm(const WPoint& Z) {
  return 0.5 * (Z.coords().maxCoeff() - Z.coords().minCoeff());
}

/// Drops the last barycentric coordinate: H_n -> {u in R^n : u >= 0, sum u <= 1}.
inline Vector simplex_chart(const Vector& x) { return x.head(x.size() - 1); }

inline Vector simplex_unchart(const Vector& u) {
  Vector x(u.size() + 1);
  x << u, 1.0 - u.sum();
  return x;
}

/// The chart image of H_n as a full-dimensional polytope of R^n.
inline const Polytope& standard_simplex_polytope(int n) {
  static constexpr int kMaxDim = 8;
  if (n < 1 || n > kMaxDim) throw Error(ErrorCode::InvalidArgument, "simplex dimension out of range");
  static const std::vector<Polytope> cache = [] {
    std::vector<Polytope> built;
    for (int d = 1; d <= kMaxDim; ++d) {
      std::vector<Vector> verts{Vector::Zero(d)};
      for (int i = 0; i < d; ++i) verts.push_back(Vector::Unit(d, i));
      built.push_back(build_polytope(verts));
    }
    return built;
  }();
  return cache[static_cast<std::size_t>(n - 1)];
}

/// Hilbert distance of H_n, evaluated with the general polytope routine in
/// the chart.
inline double simplex_distance(const SimplexPoint& x, const SimplexPoint& y) {
  if (x.dimension() != y.dimension()) throw Error(ErrorCode::DimensionMismatch, "simplex dimensions differ");
  const HilbertStructure h(standard_simplex_polytope(x.dimension()));
  return h.distance(simplex_chart(x.coords()), simplex_chart(y.coords()));
}

/// Finsler norm of H_n at x for a tangent vector v (sum v = 0), via the chart.
inline double simplex_finsler_norm(const SimplexPoint& x, const Vector& v) {
  const HilbertStructure h(standard_simplex_polytope(x.dimension()));
  return h.finsler_norm(simplex_chart(x.coords()), simplex_chart(v));
}

struct ConeMembership {
  bool inside = false;
  Vector coefficients;
};

/// Coordinates of X in the cone generators. Consecutive generators differ
/// only across one coordinate boundary, by n+1, so a_k = (X_k - X_{k+1})/(n+1).
inline ConeMembership cone_membership(const StandardCone& cone, const WPoint& X, double tol) {
  const int n = cone.dimension;
  if (X.dimension() != n) throw Error(ErrorCode::DimensionMismatch, "cone dimension");
  ConeMembership out;
  out.coefficients.resize(n);
  for (int k = 0; k < n; ++k) out.coefficients(k) = (X[k] - X[k + 1]) / (n + 1);
  out.inside = (out.coefficients.array() >= -tol).all();
  return out;
}

}  // namespace hilbert
