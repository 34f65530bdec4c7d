#include "scpast/bounds.hpp"

#include "scpast/errors.hpp"
#include "scpast/model.hpp"

#include <algorithm>
#include <cmath>

namespace scpast::bounds {

namespace {

double log_nt(std::int64_t n, std::int64_t t) {
  return std::log(static_cast<double>(std::max(n, t)));
}

const SparsityProfile& require_profile(const BoundInputs& in) {
  if (!in.profile) {
    throw ConfigError("sparse bound needs a sparsity profile");
  }
  return *in.profile;
}

}  // namespace

double e_of_t(std::int64_t n, std::int64_t d, std::int64_t t) {
  const auto tt = static_cast<double>(t);
  return 5.0 * std::sqrt(static_cast<double>(n - d) / tt) +
         5.0 * std::sqrt(6.0) * std::sqrt(log_nt(n, t) / tt);
}

double r_of_t(std::int64_t n, std::int64_t d, std::int64_t t) {
  return 5.0 * std::sqrt(static_cast<double>(n - d)) + 5.0 * std::sqrt(6.0) * std::sqrt(log_nt(n, t));
}

void validate(const BoundInputs& in) {
  if (in.lambdas.empty() || static_cast<std::int64_t>(in.lambdas.size()) != in.d) {
    throw ConfigError("bound inputs need d eigenvalues");
  }
  if (in.d >= in.n || in.t < 1) {
    throw ConfigError("bound inputs need d < n and t >= 1");
  }
  if (!SpectralGapCheck{in.tau}.passes(in.lambdas)) {
    throw ConfigError("spectral gap condition tau * lambda_d >= lambda_1 fails");
  }
}

double rate_bound_cpast(const BoundInputs& in) {
  validate(in);
  const double l1 = in.lambdas.front();
  const double ld = in.lambdas.back();
  const auto t = static_cast<double>(in.t);
  return in.c1 * (ld + 1.0) / (ld * ld) * static_cast<double>(in.n - in.d) / t +
         in.c2 * (l1 + 1.0) / (ld * ld) * log_nt(in.n, in.t) / t;
}

double rate_bound_scpast(const BoundInputs& in) {
  validate(in);
  const SparsityProfile& profile = require_profile(in);
  const double l1 = in.lambdas.front();
  const double ld = in.lambdas.back();
  const double hd = entry_noise_scale(ld);
  const double m = effective_dimension(in.t, in.n, in.lambdas, profile);
  const double rate = log_nt(in.n, in.t) / static_cast<double>(in.t);
  return in.c1 * hd * hd * m * rate + in.c2 * (l1 + 1.0) / (ld * ld) * rate;
}

RecursionCoefficients recursion_coefficients(const BoundInputs& in) {
  validate(in);
  const double l1 = in.lambdas.front();
  const double ld = in.lambdas.back();
  return {1.0 / (ld + 1.0), std::sqrt(l1 + 1.0) / (ld + 1.0), (l1 + 1.0) / (ld + 1.0)};
}

double init_error_bound(const BoundInputs& in) {
  validate(in);
  const double alpha = r_of_t(in.n, in.d, in.horizon) * (in.lambdas.front() + 1.0) / in.lambdas.back();
  return alpha * alpha / static_cast<double>(in.t0);
}

bool cpast_warmup_sufficient(const BoundInputs& in) {
  validate(in);
  const double need = 4.0 * std::sqrt(2.0) * r_of_t(in.n, in.d, in.horizon) *
                      (in.lambdas.front() + 1.0) / in.lambdas.back();
  return std::sqrt(static_cast<double>(in.t0)) >= need;
}

bool scpast_warmup_sufficient(const BoundInputs& in) {
  validate(in);
  const SparsityProfile& profile = require_profile(in);
  const double hd = entry_noise_scale(in.lambdas.back());
  const double m = effective_dimension(in.horizon, in.n, in.lambdas, profile);
  const double need = (in.c1 * hd * std::sqrt(m) + in.c2) * (in.lambdas.front() + 1.0) /
                      in.lambdas.back() * std::sqrt(log_nt(in.n, in.horizon));
  return std::sqrt(static_cast<double>(in.t0)) >= need;
}

}  // namespace scpast::bounds
