#pragma once

#include "scpast/linalg.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace scpast {

/// Stationary spike model x = sum_i sqrt(lambda_i) u_i v_i + sigma xi with
/// covariance V Lambda V^T + sigma^2 I.
class SpikeModel {
 public:
  /// eigenvalues must be positive and non-increasing, one per column of
  /// eigenvectors, and d < n. sigma >= 0 (sigma = 0 gives noiseless data).
  SpikeModel(std::vector<double> eigenvalues, OrthonormalFrame eigenvectors, double sigma = 1.0);

  Index n() const noexcept { return eigenvectors_.n(); }
  Index d() const noexcept { return eigenvectors_.d(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const OrthonormalFrame& eigenvectors() const noexcept { return eigenvectors_; }
  double sigma() const noexcept { return sigma_; }

 private:
  std::vector<double> eigenvalues_;
  OrthonormalFrame eigenvectors_;
  double sigma_;
};

struct StreamSeed {
  std::uint64_t value = 0;
};

/// Reproducible standard normal variates.
///
/// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Each uniform is (k + 0.5) * 2^-53 with k the top 53 bits of one
/// draw, so it lies strictly inside (0, 1). Normals use the Box-Muller
/// transform on consecutive uniforms (u1, u2): the pair
/// sqrt(-2 ln u1) * (cos 2 pi u2, sin 2 pi u2) is returned cosine first.
class GaussianStream {
 public:
  explicit GaussianStream(StreamSeed seed) : engine_(seed.value) {}

  double next();

 private:
  double uniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// V Lambda V^T + sigma^2 I.
Matrix true_covariance(const SpikeModel& model);

/// One observation. Consumes d + n normals: u_1..u_d first, then xi_1..xi_n.
Vector sample_observation(const SpikeModel& model, GaussianStream& rng);

/// `count` consecutive observations, one per row.
Matrix sample_observations(const SpikeModel& model, GaussianStream& rng, Index count);

/// Running sum_i gamma^{t-i} x(i) x(i)^T starting from the first observed sample.
class CovarianceAccumulator {
 public:
  /// gamma in (0, 1].
  CovarianceAccumulator(Index n, double gamma = 1.0);

  /// sum <- gamma * sum + x x^T; t <- t + 1.
  void add(const Vector& x);

  Index n() const noexcept { return sum_.rows(); }
  double gamma() const noexcept { return gamma_; }
  std::int64_t count() const noexcept { return count_; }
  const Matrix& sum() const noexcept { return sum_; }

  /// Factor applied to sum() by normalized(): 1/t when gamma = 1, else 1.
  double normalization() const;

  /// sum / t for gamma = 1; the unscaled sum otherwise. Throws EmptyAccumulator at t = 0.
  Matrix normalized() const;

 private:
  Matrix sum_;
  double gamma_;
  std::int64_t count_ = 0;
};

/// Spectral gap condition tau * lambda_d >= lambda_1.
struct SpectralGapCheck {
  double tau = 1.0;

  bool passes(std::span<const double> lambdas) const;
};

}  // namespace scpast
