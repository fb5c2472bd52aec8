#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "hilbert/error.hpp"

namespace hilbert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Global geometric tolerance (incidence, deduplication, collinearity).
inline constexpr double kEpsGeom = 1e-9;
/// Minimum facet slack for a point to count as strictly interior.
inline constexpr double kEpsInt = 1e-7;
/// Barycentric / cone-coefficient slack used by point location.
inline constexpr double kEpsLoc = 1e-9;

inline bool all_finite(const Vector& v) { return v.allFinite(); }

/// Affine rank of a set of points given as columns.
inline int affine_rank(const Matrix& columns, double eps = kEpsGeom) {
  if (columns.cols() <= 1) return 0;
  Matrix diffs = columns.rightCols(columns.cols() - 1).colwise() - columns.col(0);
  Eigen::FullPivLU<Matrix> lu(diffs);
  lu.setThreshold(eps);
  return static_cast<int>(lu.rank());
}

/// x -> matrix * x + translation, between spaces of possibly different
/// dimension. When built with `invertible`, the matrix is square and the
/// inverse is cached.
class AffineMap {
 public:
  AffineMap() = default;

  AffineMap(Matrix matrix, Vector translation)
      : matrix_(std::move(matrix)), translation_(std::move(translation)) {
    if (translation_.size() != matrix_.rows()) {
      throw Error(ErrorCode::DimensionMismatch, "affine map translation size");
    }
  }

  static AffineMap identity(Eigen::Index n) {
    return AffineMap(Matrix::Identity(n, n), Vector::Zero(n));
  }

  /// Square map with cached inverse; throws SingularChart when |det| <= eps.
  static AffineMap invertible(Matrix matrix, Vector translation, double eps = kEpsGeom) {
    AffineMap map(std::move(matrix), std::move(translation));
    if (map.matrix_.rows() != map.matrix_.cols()) {
      throw Error(ErrorCode::SingularChart, "invertible affine map must be square");
    }
    Eigen::PartialPivLU<Matrix> lu(map.matrix_);
    const double det = lu.determinant();
    if (!std::isfinite(det) || std::abs(det) <= eps) {
      throw Error(ErrorCode::SingularChart, "affine map determinant " + std::to_string(det));
    }
    map.inverse_matrix_ = lu.inverse();
    return map;
  }

  Eigen::Index domain_dim() const { return matrix_.cols(); }
  Eigen::Index codomain_dim() const { return matrix_.rows(); }
  bool is_invertible() const { return inverse_matrix_.has_value(); }

  const Matrix& matrix() const { return matrix_; }
  const Vector& translation() const { return translation_; }

  Vector operator()(const Vector& x) const { return matrix_ * x + translation_; }

  /// Acts on tangent vectors.
  Vector linear(const Vector& v) const { return matrix_ * v; }

  Vector inverse(const Vector& y) const {
    if (!inverse_matrix_) throw Error(ErrorCode::SingularChart, "affine map has no inverse");
    return *inverse_matrix_ * (y - translation_);
  }

  AffineMap inverse_map() const {
    if (!inverse_matrix_) throw Error(ErrorCode::SingularChart, "affine map has no inverse");
    return AffineMap::invertible(*inverse_matrix_, -(*inverse_matrix_ * translation_));
  }

 private:
  Matrix matrix_;
  Vector translation_;
  std::optional<Matrix> inverse_matrix_;
};

}  // namespace hilbert
