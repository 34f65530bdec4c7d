#include "scpast/model.hpp"

#include "scpast/errors.hpp"
#include "scpast/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace scpast {

SpikeModel::SpikeModel(std::vector<double> eigenvalues, OrthonormalFrame eigenvectors, double sigma)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)), sigma_(sigma) {
  if (static_cast<Index>(eigenvalues_.size()) != eigenvectors_.d()) {
    throw InvalidModel("spike model has " + std::to_string(eigenvalues_.size()) +
                       " eigenvalues for " + std::to_string(eigenvectors_.d()) + " eigenvectors");
  }
  if (eigenvectors_.d() >= eigenvectors_.n()) {
    throw InvalidModel("spike count d must be smaller than the dimension n");
  }
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    if (!std::isfinite(eigenvalues_[i]) || eigenvalues_[i] <= 0.0) {
      throw InvalidModel("eigenvalue " + std::to_string(i + 1) + " must be positive");
    }
    if (i > 0 && eigenvalues_[i] > eigenvalues_[i - 1]) {
      throw InvalidModel("eigenvalues must be non-increasing");
    }
  }
  if (!std::isfinite(sigma_) || sigma_ < 0.0) {
    throw InvalidModel("noise level sigma must be finite and nonnegative");
  }
}

double GaussianStream::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Matrix true_covariance(const SpikeModel& model) {
  const Matrix& v = model.eigenvectors().basis();
  const Vector lambda = Eigen::Map<const Vector>(model.eigenvalues().data(), model.d());
  Matrix cov = v * lambda.asDiagonal() * v.transpose();
  cov.diagonal().array() += model.sigma() * model.sigma();
  return cov;
}

Vector sample_observation(const SpikeModel& model, GaussianStream& rng) {
  const Matrix& v = model.eigenvectors().basis();
  Vector x = Vector::Zero(model.n());
  for (Index i = 0; i < model.d(); ++i) {
    const double u = rng.next();
    x += (std::sqrt(model.eigenvalues()[i]) * u) * v.col(i);
  }
  for (Index k = 0; k < model.n(); ++k) {
    x(k) += model.sigma() * rng.next();
  }
  return x;
}

Matrix sample_observations(const SpikeModel& model, GaussianStream& rng, Index count) {
  Matrix rows(count, model.n());
  for (Index t = 0; t < count; ++t) {
    rows.row(t) = sample_observation(model, rng).transpose();
  }
  return rows;
}

CovarianceAccumulator::CovarianceAccumulator(Index n, double gamma)
    : sum_(Matrix::Zero(n, n)), gamma_(gamma) {
  if (n < 1) {
    throw DimensionMismatch("accumulator dimension must be positive");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidModel("forgetting factor must lie in (0, 1]");
  }
}

void CovarianceAccumulator::add(const Vector& x) {
  if (x.size() != n()) {
    throw DimensionMismatch("observation has length " + std::to_string(x.size()) +
                            ", accumulator expects " + std::to_string(n()));
  }
  require_finite(x, "observation");
  kernels::omp::rank_one_update(sum_, gamma_, x);
  ++count_;
}

double CovarianceAccumulator::normalization() const {
  if (count_ == 0) {
    throw EmptyAccumulator("no observations accumulated");
  }
  return gamma_ == 1.0 ? 1.0 / static_cast<double>(count_) : 1.0;
}

Matrix CovarianceAccumulator::normalized() const {
  const double scale = normalization();
  if (scale == 1.0) {
    return sum_;
  }
  return sum_ * scale;
}

bool SpectralGapCheck::passes(std::span<const double> lambdas) const {
  if (lambdas.empty()) {
    return true;
  }
  return tau * lambdas.back() >= lambdas.front();
}

}  // namespace scpast
