#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hilbert/face_lattice.hpp"
#include "hilbert/simplex_model.hpp"

namespace hilbert {

/// One simplex of the barycentric subdivision. vertices[k] is the barycenter
/// of the flag's k-face for k < n, and vertices[n] is the polytope barycenter.
/// The facet opposite vertices[n] lies in the polytope boundary.
struct CellSimplex {
  std::size_t id = 0;
  Flag flag;
  std::vector<Vector> vertices;
};

/// Positive cone at the polytope barycenter spanned by vertices[k] - apex.
struct CellCone {
  Vector apex;
  std::vector<Vector> generators;
};

inline CellCone cell_cone(const CellSimplex& cell) {
  const int n = static_cast<int>(cell.vertices.size()) - 1;
  CellCone cone{cell.vertices[static_cast<std::size_t>(n)], {}};
  for (int k = 0; k < n; ++k) cone.generators.push_back(cell.vertices[static_cast<std::size_t>(k)] - cone.apex);
  return cone;
}

inline double simplex_volume(const std::vector<Vector>& vertices) {
  const auto n = static_cast<Eigen::Index>(vertices.size()) - 1;
  Matrix edges(n, n);
  for (Eigen::Index k = 0; k < n; ++k) edges.col(k) = vertices[static_cast<std::size_t>(k)] - vertices.back();
  double fact = 1.0;
  for (Eigen::Index k = 2; k <= n; ++k) fact *= static_cast<double>(k);
  return std::abs(edges.determinant()) / fact;
}

/// One cell per flag, in flag order.
inline std::vector<CellSimplex> decompose(const Polytope& poly, const FaceLattice& lat) {
  const int n = poly.dimension();
  const Vector center = poly.barycenter();
  std::vector<CellSimplex> cells;
  for (auto& flag : enumerate_flags(lat)) {
    CellSimplex cell;
    cell.id = cells.size();
    for (std::size_t face : flag.chain) cell.vertices.push_back(barycenter(lat.faces[face], poly));
    cell.vertices.push_back(center);
    cell.flag = std::move(flag);
    if (static_cast<int>(cell.vertices.size()) != n + 1 || !(simplex_volume(cell.vertices) > poly.eps())) {
      throw Error(ErrorCode::DegenerateCell, "cell " + std::to_string(cell.id) + " is degenerate");
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

inline std::vector<CellSimplex> decompose(const Polytope& poly) { return decompose(poly, face_lattice(poly)); }

struct SegmentPiece {
  Vector point;
  std::size_t cell;
};

/// The global map F: x in S_i -> M_i(phi(L_i(x))), with its inverse.
///
/// L_i is affine from R^n onto the hyperplane {sum = 1} of R^{n+1}, sending
/// the cell's vertex k to the standard cell vertex k. M_i is linear from W_n
/// to R^n, sending standard cone generator k to the cell-cone generator k.
/// Images are reported relative to the polytope barycenter, so F(p_n) = 0.
class FlatteningAtlas {
 public:
  explicit FlatteningAtlas(Polytope poly) : poly_(std::move(poly)) {
    lattice_ = face_lattice(poly_);
    cells_ = decompose(poly_, lattice_);
    const int n = poly_.dimension();
    const StandardCell std_cell = standard_cell(n);
    const StandardCone std_cone = standard_cone(n);
    cone_ = std_cone;

    Matrix hat(n + 1, n + 1);  // standard cell vertices as columns
    for (int k = 0; k <= n; ++k) hat.col(k) = std_cell.vertices[static_cast<std::size_t>(k)];
    Matrix tilde(n + 1, n);  // standard cone generators as columns
    for (int k = 0; k < n; ++k) tilde.col(k) = std_cone.generators[static_cast<std::size_t>(k)];
    // Cone coordinates of X in W_n: a_k = (X_k - X_{k+1}) / (n+1).
    Matrix coeffs = Matrix::Zero(n, n + 1);
    for (int k = 0; k < n; ++k) {
      coeffs(k, k) = 1.0 / (n + 1);
      coeffs(k, k + 1) = -1.0 / (n + 1);
    }
    const Matrix hat_inv = hat.inverse();

    for (const auto& cell : cells_) {
      Matrix homog(n + 1, n + 1);  // [v_k; 1] columns
      for (int k = 0; k <= n; ++k) {
        homog.col(k).head(n) = cell.vertices[static_cast<std::size_t>(k)];
        homog(n, k) = 1.0;
      }
      Eigen::PartialPivLU<Matrix> lu(homog);
      if (!(std::abs(lu.determinant()) > poly_.eps())) {
        throw Error(ErrorCode::SingularChart, "cell " + std::to_string(cell.id) + " chart is singular");
      }
      Matrix bary = lu.inverse();  // x -> barycentric coordinates
      const Matrix chart = hat * bary;
      charts_.emplace_back(chart.leftCols(n), chart.col(n));
      chart_inverses_.emplace_back(homog.topRows(n) * hat_inv, Vector::Zero(n));
      barycentric_.push_back(std::move(bary));

      const CellCone cc = cell_cone(cell);
      Matrix omega(n, n);
      for (int k = 0; k < n; ++k) omega.col(k) = cc.generators[static_cast<std::size_t>(k)];
      Eigen::PartialPivLU<Matrix> olu(omega);
      if (!(std::abs(olu.determinant()) > poly_.eps())) {
        throw Error(ErrorCode::SingularChart, "cell " + std::to_string(cell.id) + " cone is singular");
      }
      const Matrix omega_inv = olu.inverse();
      cone_maps_.emplace_back(omega * coeffs, Vector::Zero(n));
      cone_inverses_.emplace_back(tilde * omega_inv, Vector::Zero(n + 1));
      cone_coords_.push_back(omega_inv);
    }
    verify();
  }

  const Polytope& polytope() const { return poly_; }
  const FaceLattice& lattice() const { return lattice_; }
  const std::vector<CellSimplex>& cells() const { return cells_; }
  const StandardCone& standard_cone_generators() const { return cone_; }
  int dimension() const { return poly_.dimension(); }

  /// L_i : R^n -> {sum = 1} in R^{n+1}.
  const AffineMap& chart(std::size_t i) const { return charts_.at(i); }
  /// L_i^{-1}, defined on {sum = 1}.
  const AffineMap& chart_inverse(std::size_t i) const { return chart_inverses_.at(i); }
  /// M_i : W_n -> R^n, relative to the cone apex p_n.
  const AffineMap& cone_map(std::size_t i) const { return cone_maps_.at(i); }
  /// M_i^{-1} : R^n -> W_n.
  const AffineMap& cone_map_inverse(std::size_t i) const { return cone_inverses_.at(i); }
  /// Apex of every cell cone (the polytope barycenter).
  const Vector& cone_apex() const { return poly_.barycenter(); }

  Vector barycentric(std::size_t i, const Vector& x) const {
    Vector h(x.size() + 1);
    h << x, 1.0;
    return barycentric_.at(i) * h;
  }

  Vector cone_coordinates(std::size_t i, const Vector& y) const { return cone_coords_.at(i) * y; }

  /// Lowest-id cell whose barycentric coordinates of x are all >= -eps_loc.
  std::size_t locate(const Vector& x) const {
    poly_.require_interior(x);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (barycentric(i, x).minCoeff() >= -kEpsLoc) return i;
    }
    throw Error(ErrorCode::LocationFailure, "no cell contains the point");
  }

  /// F evaluated through the chart of cell i (x should lie in or near S_i).
  Vector flatten_in_cell(std::size_t i, const Vector& x) const {
    const Vector s = chart(i)(x);
    if ((s.array() <= 0.0).any()) {
      throw Error(ErrorCode::PointNotInterior, "chart image leaves the open simplex");
    }
    return cone_map(i)(phi(SimplexPoint::normalized(s)).coords());
  }

  Vector flatten(const Vector& x) const { return flatten_in_cell(locate(x), x); }

  /// Lowest-id cell cone whose cone coordinates of y are all >= -eps_loc.
  std::size_t locate_cone(const Vector& y) const {
    if (y.size() != dimension() || !y.allFinite()) {
      throw Error(ErrorCode::DimensionMismatch, "image point dimension");
    }
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cone_coordinates(i, y).minCoeff() >= -kEpsLoc) return i;
    }
    throw Error(ErrorCode::ConeLocationFailure, "no cell cone contains the point");
  }

  Vector unflatten_in_cell(std::size_t i, const Vector& y) const {
    const Vector X = cone_map_inverse(i)(y);
    const SimplexPoint s = phi_inv(WPoint(X));
    return chart_inverse(i)(s.coords());
  }

  Vector unflatten(const Vector& y) const { return unflatten_in_cell(locate_cone(y), y); }

  /// Breakpoints p = p_1, ..., p_M = q such that each [p_j, p_{j+1}] lies in
  /// the single cell recorded with p_j. The last entry repeats the last cell.
  std::vector<SegmentPiece> split_segment(const Vector& p, const Vector& q) const {
    poly_.require_interior(p);
    poly_.require_interior(q);
    if ((q - p).norm() <= poly_.eps()) return {SegmentPiece{p, locate(p)}};

    // Parameter interval of the segment inside each cell.
    constexpr double kMinStep = 1e-12;
    std::vector<std::pair<double, double>> spans(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Vector start = barycentric(i, p);
      const Vector rate = barycentric(i, q) - start;
      double lo = 0.0, hi = 1.0;
      for (Eigen::Index k = 0; k < start.size() && lo <= hi; ++k) {
        // start_k + t rate_k >= -eps_loc
        if (rate(k) > 0.0) {
          lo = std::max(lo, (-kEpsLoc - start(k)) / rate(k));
        } else if (rate(k) < 0.0) {
          hi = std::min(hi, (-kEpsLoc - start(k)) / rate(k));
        } else if (start(k) < -kEpsLoc) {
          hi = -1.0;
        }
      }
      spans[i] = {lo, hi};
    }

    std::vector<SegmentPiece> pieces;
    double t = 0.0;
    while (t < 1.0 - kMinStep) {
      std::size_t best = cells_.size();
      double reach = t;
      for (std::size_t i = 0; i < cells_.size(); ++i) {
        const auto [lo, hi] = spans[i];
        if (lo <= t + kMinStep && hi > reach + kMinStep) {
          best = i;
          reach = hi;
        }
      }
      if (best == cells_.size()) throw Error(ErrorCode::LocationFailure, "segment leaves every cell");
      pieces.push_back(SegmentPiece{p + t * (q - p), best});
      t = std::max(reach, t + kMinStep);
    }
    pieces.push_back(SegmentPiece{q, pieces.back().cell});
    return pieces;
  }

 private:
  void verify() const {
    const int n = poly_.dimension();
    const StandardCell std_cell = standard_cell(n);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const double scale = 1.0 + poly_.barycenter().norm();
      for (int k = 0; k <= n; ++k) {
        const auto& v = cells_[i].vertices[static_cast<std::size_t>(k)];
        if ((charts_[i](v) - std_cell.vertices[static_cast<std::size_t>(k)]).norm() > 1e-10 ||
            (chart_inverses_[i](std_cell.vertices[static_cast<std::size_t>(k)]) - v).norm() > 1e-10 * scale) {
          throw Error(ErrorCode::SingularChart, "chart residual too large in cell " + std::to_string(i));
        }
      }
      const CellCone cc = cell_cone(cells_[i]);
      for (int k = 0; k < n; ++k) {
        const Vector image = cone_maps_[i](cone_.generators[static_cast<std::size_t>(k)]);
        if ((image - cc.generators[static_cast<std::size_t>(k)]).norm() > 1e-10 * scale) {
          throw Error(ErrorCode::SingularChart, "cone map residual too large in cell " + std::to_string(i));
        }
      }
    }
  }

  Polytope poly_;
  FaceLattice lattice_;
  std::vector<CellSimplex> cells_;
  StandardCone cone_;
  std::vector<AffineMap> charts_;
  std::vector<AffineMap> chart_inverses_;
  std::vector<AffineMap> cone_maps_;
  std::vector<AffineMap> cone_inverses_;
  std::vector<Matrix> barycentric_;
  std::vector<Matrix> cone_coords_;
};

inline FlatteningAtlas build_atlas(Polytope poly) { return FlatteningAtlas(std::move(poly)); }

}  // namespace hilbert
