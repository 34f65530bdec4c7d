#include "scpast/sparsity.hpp"

#include "scpast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace scpast {

namespace {

double log_rate(std::int64_t t, std::int64_t n) {
  return std::log(static_cast<double>(std::max(n, t))) / static_cast<double>(t);
}

}  // namespace

double apply_threshold(double x, double beta, ThresholdKind kind) {
  if (beta < 0.0 || std::isnan(beta)) {
    throw NegativeThreshold("threshold must be nonnegative");
  }
  const double mag = std::abs(x);
  if (mag <= beta) {
    return 0.0;
  }
  switch (kind) {
    case ThresholdKind::hard:
      return x;
    case ThresholdKind::soft: {
      // Nudge up by ulps when rounding made the shrink exceed beta.
      double shrunk = mag - beta;
      while (mag - shrunk > beta) {
        shrunk = std::nextafter(shrunk, mag);
      }
      return std::copysign(shrunk, x);
    }
  }
  return x;
}

std::vector<double> threshold_vector(std::int64_t t, std::span<const double> lambdas,
                                     std::int64_t n, double a) {
  if (t < 1) {
    throw InvalidModel("threshold schedule needs t >= 1");
  }
  const double rate = log_rate(t, n);
  std::vector<double> beta;
  beta.reserve(lambdas.size());
  for (double lambda : lambdas) {
    beta.push_back(a * std::sqrt((lambda + 1.0) * rate));
  }
  return beta;
}

double min_schedule_constant(std::int64_t n, std::int64_t horizon, std::int64_t t0) {
  return 3.0 * std::sqrt(2.0) * std::log(static_cast<double>(std::max(n, horizon))) /
         std::log(static_cast<double>(std::max(n, t0)));
}

double entry_noise_scale(double lambda) { return std::sqrt(lambda + 1.0) / lambda; }

double SparsityProfile::default_b(double a, double tau, std::size_t d) {
  return 0.1 * a / (std::sqrt(tau) * std::sqrt(static_cast<double>(d)));
}

void SparsityProfile::validate() const {
  if (!(r > 0.0 && r < 2.0)) {
    throw InvalidModel("weak-l_r exponent r must lie in (0, 2)");
  }
  for (double si : s) {
    if (!(si > 0.0)) {
      throw InvalidModel("weak-l_r radii must be positive");
    }
  }
}

std::vector<Index> signal_set(const OrthonormalFrame& v, std::int64_t t,
                              std::span<const double> lambdas, const SparsityProfile& profile,
                              std::int64_t n) {
  if (static_cast<Index>(lambdas.size()) != v.d()) {
    throw DimensionMismatch("one eigenvalue per eigenvector required");
  }
  const double root_rate = std::sqrt(log_rate(t, n));
  std::vector<Index> members;
  for (Index j = 0; j < v.n(); ++j) {
    for (Index i = 0; i < v.d(); ++i) {
      const double cut = profile.b * entry_noise_scale(lambdas[i]) * root_rate;
      if (std::abs(v.basis()(j, i)) >= cut) {
        members.push_back(j);
        break;
      }
    }
  }
  return members;
}

double effective_dimension(std::int64_t t, std::int64_t n, std::span<const double> lambdas,
                           const SparsityProfile& profile) {
  if (profile.s.size() != lambdas.size()) {
    throw DimensionMismatch("one weak-l_r radius per eigenvalue required");
  }
  const double rate_power = std::pow(log_rate(t, n), -profile.r / 2.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    sum += std::pow(profile.s[j] / entry_noise_scale(lambdas[j]), profile.r) * rate_power;
  }
  return std::min(static_cast<double>(n), sum);
}

bool weak_lr_member(const Vector& v, double s, double r) {
  std::vector<double> mags(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    mags[i] = std::abs(v(i));
  }
  std::sort(mags.begin(), mags.end(), std::greater<>());
  for (std::size_t k = 0; k < mags.size(); ++k) {
    if (mags[k] > s * std::pow(static_cast<double>(k + 1), -1.0 / r)) {
      return false;
    }
  }
  return true;
}

std::size_t threshold_columns(Matrix& y, std::span<const double> beta, ThresholdKind kind,
                              bool safeguard) {
  if (static_cast<Index>(beta.size()) != y.cols()) {
    throw DimensionMismatch("one threshold per column required");
  }
  std::size_t fired = 0;
  for (Index i = 0; i < y.cols(); ++i) {
    Index keep = 0;
    const double peak = y.col(i).cwiseAbs().maxCoeff(&keep);
    const double kept_value = y(keep, i);
    for (Index j = 0; j < y.rows(); ++j) {
      y(j, i) = apply_threshold(y(j, i), beta[i], kind);
    }
    if (safeguard && peak > 0.0 && y(keep, i) == 0.0) {
      y(keep, i) = kept_value;
      ++fired;
    }
  }
  return fired;
}

}  // namespace scpast
