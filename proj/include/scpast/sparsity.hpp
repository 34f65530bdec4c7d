#pragma once

#include "scpast/linalg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace scpast {

enum class ThresholdKind { hard, soft };

/// Thresholding function plus the schedule constant `a` of beta_i(t).
struct ThresholdRule {
  ThresholdKind kind = ThresholdKind::hard;
  double a = 1.5;
};

/// hard: x * 1{|x| > beta}; soft: sign(x) * (|x| - beta)_+. Both return 0 on
/// |x| <= beta and stay within beta of x. Throws NegativeThreshold for beta < 0.
double apply_threshold(double x, double beta, ThresholdKind kind);

/// beta_i(t) = a * sqrt((lambda_i + 1) * log(max(n, t)) / t), natural log.
std::vector<double> threshold_vector(std::int64_t t, std::span<const double> lambdas,
                                     std::int64_t n, double a);

/// Smallest admissible schedule constant, 3 sqrt(2) log(max(n, T)) / log(max(n, t0)).
/// The same bound applies to the diagonal-selection constant gamma0.
double min_schedule_constant(std::int64_t n, std::int64_t horizon, std::int64_t t0);

/// h = sqrt(lambda + 1) / lambda, the per-entry noise scale of an eigenvector estimate.
double entry_noise_scale(double lambda);

/// Weak-l_r sparsity description of the leading eigenvectors.
struct SparsityProfile {
  double r = 1.0;         // in (0, 2)
  std::vector<double> s;  // one radius per eigenvector, all positive
  double b = 0.0;         // signal-set constant

  /// 0.1 a / (sqrt(tau) sqrt(d)).
  static double default_b(double a, double tau, std::size_t d);

  /// Throws InvalidModel if r or s are out of range.
  void validate() const;
};

/// Coordinates j with |v_ij| >= b h_i sqrt(log(max(n, t)) / t) for some column i.
std::vector<Index> signal_set(const OrthonormalFrame& v, std::int64_t t,
                              std::span<const double> lambdas, const SparsityProfile& profile,
                              std::int64_t n);

/// M(t) = min(n, sum_j (s_j / h_j)^r (log(max(n, t)) / t)^{-r/2}).
/// card(S(t)) is bounded by C * M(t) for an unspecified constant C.
double effective_dimension(std::int64_t t, std::int64_t n, std::span<const double> lambdas,
                           const SparsityProfile& profile);

/// True iff the k-th largest |v| is at most s k^{-1/r} for every k.
bool weak_lr_member(const Vector& v, double s, double r);

/// Applies apply_threshold to column i of y with beta[i]. With `safeguard`
/// the largest-magnitude entry of each column keeps its value even when it
/// would be zeroed. Returns how many columns needed the safeguard.
std::size_t threshold_columns(Matrix& y, std::span<const double> beta, ThresholdKind kind,
                              bool safeguard);

}  // namespace scpast
