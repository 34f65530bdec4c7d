#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace scpast {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerance on max|B^T B - I| accepted for an orthonormal frame.
inline constexpr double kOrthonormalTol = 1e-10;

/// Relative rank tolerance: M is degenerate when sigma_min(M) <= kRankTol * sigma_max(M).
inline constexpr double kRankTol = 1e-12;

/// Throws NonFiniteInput if any entry of m is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);
void require_finite(const Vector& v, std::string_view what);

/// An n x d matrix with orthonormal columns. Columns are kept in the order
/// they were supplied.
class OrthonormalFrame {
 public:
  /// Validates finiteness, d <= n and max|B^T B - I| <= tol.
  explicit OrthonormalFrame(Matrix basis, double tol = kOrthonormalTol);

  const Matrix& basis() const noexcept { return basis_; }
  Index n() const noexcept { return basis_.rows(); }
  Index d() const noexcept { return basis_.cols(); }

  /// max|B^T B - I| for an arbitrary matrix.
  static double orthonormality_error(const Matrix& b);
  double orthonormality_error() const { return orthonormality_error(basis_); }

 private:
  Matrix basis_;
};

struct SymmetricEigen {
  Vector eigenvalues;  // descending
  OrthonormalFrame eigenvectors;
};

/// M (M^T M)^{-1/2}, the orthonormal polar factor of M. The inverse square
/// root comes from an eigendecomposition of the d x d Gram matrix; when the
/// Gram matrix is too ill-conditioned to resolve sigma_min, a thin SVD of M
/// is used instead. Throws DegenerateSubspace if sigma_min <= kRankTol * sigma_max.
OrthonormalFrame symmetric_orthogonalize(const Matrix& m);

/// l(W, Q) = ||W W^T - Q Q^T||_2^2 = sin^2 of the largest principal angle.
/// Exactly symmetric in its arguments and clamped to [0, 1].
double subspace_distance(const OrthonormalFrame& w, const OrthonormalFrame& q);

struct PrincipalAngle {
  double cos_d;
  double tan_d;
};

/// cos of the largest principal angle, sigma_min(W^T Q).
double cos_principal_angle_d(const OrthonormalFrame& w, const OrthonormalFrame& q);

/// cos and tan of the largest principal angle. The tangent is
/// max_x ||(I - W W^T) Q x|| / ||W^T Q x||. Throws SubspacesOrthogonal when
/// cos <= 1e-14.
PrincipalAngle principal_angle_d(const OrthonormalFrame& w, const OrthonormalFrame& q);

/// Leading d eigenpairs of a symmetric matrix, eigenvalues descending, each
/// eigenvector signed so its largest-magnitude entry is nonnegative.
SymmetricEigen top_d_eigenvectors(const Matrix& a, Index d);

/// Flip column signs so each column's largest-magnitude entry is nonnegative.
void canonicalize_signs(Matrix& columns);

}  // namespace scpast
