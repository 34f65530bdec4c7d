#include "scpast/linalg.hpp"

#include "scpast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scpast {

namespace {

// Gram eigenvalues below this fraction of the largest cannot resolve
// sigma_min accurately (rounding in M^T M is ~eps * sigma_max^2).
constexpr double kGramConditionLimit = 1e-12;

constexpr double kReorthTarget = 1e-13;

constexpr double kOrthogonalCosTol = 1e-14;

Matrix polar_factor_svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smax > 0.0) || smin <= kRankTol * smax) {
    throw DegenerateSubspace("matrix is column-rank deficient (sigma_min/sigma_max = " +
                             std::to_string(smax > 0.0 ? smin / smax : 0.0) + ")");
  }
  return svd.matrixU() * svd.matrixV().transpose();
}

Matrix polar_factor(const Matrix& m) {
  const Matrix gram = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const Vector& ev = es.eigenvalues();  // ascending
  const double emax = ev(ev.size() - 1);
  const double emin = ev(0);
  if (!(emax > 0.0)) {
    throw DegenerateSubspace("matrix is identically zero");
  }
  if (emin <= kGramConditionLimit * emax) {
    return polar_factor_svd(m);
  }
  const Vector inv_sqrt = ev.cwiseSqrt().cwiseInverse();
  const Matrix& q = es.eigenvectors();
  return m * (q * inv_sqrt.asDiagonal() * q.transpose());
}

// Largest eigenvalue of R^T R with R = (I - W W^T) Q, i.e. ||(I - W W^T) Q||_2^2.
double projected_residual_norm2(const Matrix& w, const Matrix& q) {
  const Matrix r = q - w * (w.transpose() * q);
  const Matrix g = r.transpose() * r;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(g.rows() - 1);
}

void require_same_shape(const OrthonormalFrame& w, const OrthonormalFrame& q) {
  if (w.n() != q.n() || w.d() != q.d()) {
    throw DimensionMismatch("frames differ in shape: " + std::to_string(w.n()) + "x" +
                            std::to_string(w.d()) + " vs " + std::to_string(q.n()) + "x" +
                            std::to_string(q.d()));
  }
}

}  // namespace

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw NonFiniteInput(std::string(what) + " contains a non-finite entry");
  }
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw NonFiniteInput(std::string(what) + " contains a non-finite entry");
  }
}

OrthonormalFrame::OrthonormalFrame(Matrix basis, double tol) : basis_(std::move(basis)) {
  if (basis_.cols() < 1 || basis_.rows() < basis_.cols()) {
    throw DimensionMismatch("orthonormal frame needs 1 <= d <= n, got " +
                            std::to_string(basis_.rows()) + "x" + std::to_string(basis_.cols()));
  }
  require_finite(basis_, "frame basis");
  const double err = orthonormality_error(basis_);
  if (err > tol) {
    throw NotOrthonormal("max|B^T B - I| = " + std::to_string(err));
  }
}

double OrthonormalFrame::orthonormality_error(const Matrix& b) {
  const Matrix g = b.transpose() * b - Matrix::Identity(b.cols(), b.cols());
  return g.cwiseAbs().maxCoeff();
}

OrthonormalFrame symmetric_orthogonalize(const Matrix& m) {
  if (m.cols() < 1 || m.rows() < m.cols()) {
    throw DimensionMismatch("symmetric_orthogonalize needs an n x d matrix with 1 <= d <= n");
  }
  require_finite(m, "matrix to orthogonalize");
  Matrix y = polar_factor(m);
  // The polar factor of an orthonormal matrix is itself, so extra passes only
  // remove rounding from ill-conditioned inputs.
  for (int pass = 0; pass < 2 && OrthonormalFrame::orthonormality_error(y) > kReorthTarget; ++pass) {
    y = polar_factor(y);
  }
  return OrthonormalFrame(std::move(y));
}

double subspace_distance(const OrthonormalFrame& w, const OrthonormalFrame& q) {
  require_same_shape(w, q);
  const double forward = projected_residual_norm2(w.basis(), q.basis());
  const double backward = projected_residual_norm2(q.basis(), w.basis());
  return std::clamp(0.5 * (forward + backward), 0.0, 1.0);
}

double cos_principal_angle_d(const OrthonormalFrame& w, const OrthonormalFrame& q) {
  require_same_shape(w, q);
  const Matrix k = w.basis().transpose() * q.basis();
  Eigen::JacobiSVD<Matrix> svd(k);
  return std::min(1.0, svd.singularValues()(k.cols() - 1));
}

PrincipalAngle principal_angle_d(const OrthonormalFrame& w, const OrthonormalFrame& q) {
  require_same_shape(w, q);
  const Matrix k = w.basis().transpose() * q.basis();
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullV);
  const Index last = k.cols() - 1;
  const double cos_d = std::min(1.0, svd.singularValues()(last));
  if (cos_d <= kOrthogonalCosTol) {
    throw SubspacesOrthogonal("largest principal angle is pi/2; tangent undefined");
  }
  // ||(I - W W^T) Q x||^2 = 1 - ||W^T Q x||^2 for unit x, so the ratio peaks
  // at the right singular vector of W^T Q with the smallest singular value.
  const Vector x = svd.matrixV().col(last);
  const Vector qx = q.basis() * x;
  const Vector residual = qx - w.basis() * (w.basis().transpose() * qx);
  return {cos_d, residual.norm() / cos_d};
}

void canonicalize_signs(Matrix& columns) {
  for (Index j = 0; j < columns.cols(); ++j) {
    Index imax = 0;
    columns.col(j).cwiseAbs().maxCoeff(&imax);
    if (columns(imax, j) < 0.0) {
      columns.col(j) = -columns.col(j);
    }
  }
}

SymmetricEigen top_d_eigenvectors(const Matrix& a, Index d) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("eigendecomposition needs a square matrix");
  }
  if (d < 1 || d > a.rows()) {
    throw DimensionMismatch("requested " + std::to_string(d) + " eigenpairs of a " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.rows()) +
                            " matrix");
  }
  require_finite(a, "symmetric matrix");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw NotSymmetric("max|A - A^T| = " + std::to_string(asym));
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const Index n = a.rows();
  Vector values(d);
  Matrix vectors(n, d);
  for (Index j = 0; j < d; ++j) {
    values(j) = es.eigenvalues()(n - 1 - j);
    vectors.col(j) = es.eigenvectors().col(n - 1 - j);
  }
  canonicalize_signs(vectors);
  return {std::move(values), OrthonormalFrame(std::move(vectors))};
}

}  // namespace scpast
