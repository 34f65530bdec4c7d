#pragma once

#include "scpast/sparsity.hpp"

#include <cstdint>
#include <optional>
#include <vector>

// Evaluators for the theoretical error bounds. They are overlays and sanity
// gates for experiments; the constants C0, C1, C2 are unknown, so every
// evaluator takes them as inputs.
namespace scpast::bounds {

/// E(t) = 5 sqrt((n - d) / t) + 5 sqrt(6) sqrt(log(max(n, t)) / t).
double e_of_t(std::int64_t n, std::int64_t d, std::int64_t t);

/// R(t) = 5 sqrt(n - d) + 5 sqrt(6) sqrt(log(max(n, t))); R_max = R(T).
double r_of_t(std::int64_t n, std::int64_t d, std::int64_t t);

struct BoundInputs {
  std::int64_t n = 0;
  std::int64_t d = 1;
  std::int64_t t = 1;
  std::int64_t t0 = 1;
  std::int64_t horizon = 1;  // T
  std::vector<double> lambdas;
  double tau = 1.0;
  double a = 1.5;
  std::optional<SparsityProfile> profile;
  double c1 = 1.0;
  double c2 = 1.0;
};

/// Throws ConfigError on shape problems or a failed spectral gap check.
void validate(const BoundInputs& in);

/// C1 (lambda_d + 1) / lambda_d^2 (n - d) / t + C2 (lambda_1 + 1) / lambda_d^2 log(max(n, t)) / t.
double rate_bound_cpast(const BoundInputs& in);

/// C1 h_d^2 M(t) log(max(n, t)) / t + C2 (lambda_1 + 1) / lambda_d^2 log(max(n, t)) / t.
/// Requires a sparsity profile.
double rate_bound_scpast(const BoundInputs& in);

struct RecursionCoefficients {
  double alpha0;  // 1 / (lambda_d + 1)
  double alpha1;  // sqrt(lambda_1 + 1) / (lambda_d + 1)
  double alpha2;  // (lambda_1 + 1) / (lambda_d + 1)
};

RecursionCoefficients recursion_coefficients(const BoundInputs& in);

/// alpha^2 / t0 with alpha = R_max (lambda_1 + 1) / lambda_d.
double init_error_bound(const BoundInputs& in);

/// sqrt(t0) >= 4 sqrt(2) R_max (lambda_1 + 1) / lambda_d.
bool cpast_warmup_sufficient(const BoundInputs& in);

/// sqrt(t0) >= (C1 h_d sqrt(M(T)) + C2) (lambda_1 + 1) / lambda_d sqrt(log(max(n, T))).
bool scpast_warmup_sufficient(const BoundInputs& in);

}  // namespace scpast::bounds
