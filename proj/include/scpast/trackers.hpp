#pragma once

#include "scpast/linalg.hpp"
#include "scpast/model.hpp"
#include "scpast/sparsity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scpast {

enum class TrackerMode { cpast, scpast };

std::string_view mode_name(TrackerMode mode);
TrackerMode parse_mode(std::string_view name);

/// Warm-up settings for the diagonal-selection initialization.
struct InitConfig {
  std::int64_t t0 = 100;
  double gamma0 = 0.0;
  Index d = 1;
  /// Power applied to log(max(n, t0)) / t0 in the selection threshold.
  double diag_exponent = 1.0;
  /// Noise floor the diagonal is compared against (sigma^2, 1 for normalized data).
  double noise_variance = 1.0;
  /// When fewer than d coordinates pass, admit the d largest diagonal entries
  /// instead of throwing EmptySelection.
  bool allow_fallback = true;
};

/// Per-step thresholding of SCPAST: beta_i(t) from the rule and eigenvalues.
struct SparseSchedule {
  ThresholdRule rule;
  std::vector<double> lambdas;
  bool safeguard = true;
};

/// Streaming subspace tracker. Each step accumulates the new observation,
/// multiplies the covariance estimate by the previous frame, optionally
/// thresholds the product column by column (SCPAST), and re-orthonormalizes
/// with symmetric_orthogonalize.
class Tracker {
 public:
  /// Starts from an explicit frame and accumulator. A schedule selects SCPAST.
  Tracker(OrthonormalFrame start, CovarianceAccumulator acc,
          std::optional<SparseSchedule> schedule = std::nullopt);

  /// CPAST started from the top-d eigenvectors of the warm-up covariance.
  /// Rows of `warmup` are observations. Throws RankDeficientWarmup if there
  /// are fewer than d rows or the warm-up spans fewer than d directions.
  static Tracker init_svd(const Matrix& warmup, Index d, double gamma = 1.0);

  /// SCPAST started by diagonal selection: coordinates whose warm-up variance
  /// exceeds noise_variance + gamma0 (log(max(n, t0)) / t0)^diag_exponent,
  /// leading eigenvectors of that block, zero elsewhere.
  static Tracker init_sparse(const Matrix& warmup, const InitConfig& cfg, SparseSchedule schedule,
                             double gamma = 1.0);

  /// Accumulate x, then update the estimate.
  void step(const Vector& x);

  /// Update the estimate against the current accumulator without a new
  /// observation (one orthogonal-iteration sweep on a frozen covariance).
  void iterate();

  /// O(n d^2) product update Upsilon(t) ~ gamma Upsilon(t-1) C + x (x^T V(t-1)),
  /// C = V(t-2)^T V(t-1). CPAST only; the step after enabling is always exact.
  void set_fast_multiply(bool enabled);
  bool fast_multiply() const noexcept { return fast_; }

  /// Multiply by the normalized covariance (default) or the raw sum.
  void set_normalize_covariance(bool enabled) noexcept { normalize_ = enabled; }

  TrackerMode mode() const noexcept { return schedule_ ? TrackerMode::scpast : TrackerMode::cpast; }
  const OrthonormalFrame& estimate() const noexcept { return estimate_; }
  const CovarianceAccumulator& accumulator() const noexcept { return acc_; }
  std::int64_t t() const noexcept { return acc_.count(); }
  const std::optional<SparseSchedule>& schedule() const noexcept { return schedule_; }

  /// Steps in which the rank safeguard restored at least one column.
  std::size_t safeguard_steps() const noexcept { return safeguard_steps_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  /// Coordinates kept by init_sparse (empty for other initializations).
  const std::vector<Index>& selected() const noexcept { return selected_; }

 private:
  void advance(const Vector* x);

  OrthonormalFrame estimate_;
  CovarianceAccumulator acc_;
  std::optional<SparseSchedule> schedule_;
  Matrix upsilon_;
  Matrix previous_;
  bool fast_ = false;
  bool fast_ready_ = false;
  bool normalize_ = true;
  std::size_t safeguard_steps_ = 0;
  std::vector<std::string> warnings_;
  std::vector<Index> selected_;
};

}  // namespace scpast
