#include "scpast/bounds.hpp"
#include "scpast/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace scpast;
using namespace scpast::bounds;

namespace {

BoundInputs single_spike(std::int64_t n, std::int64_t t, double lambda) {
  BoundInputs in;
  in.n = n;
  in.d = 1;
  in.t = t;
  in.t0 = 100;
  in.horizon = 2000;
  in.lambdas = {lambda};
  return in;
}

}  // namespace

TEST_CASE("E(t) and R(t)") {
  const double oracle = 5.0 + 5.0 * std::sqrt(6.0) * std::sqrt(std::log(65.0) / 64.0);
  CHECK(e_of_t(65, 1, 64) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(e_of_t(65, 1, 64) == doctest::Approx(8.127893886278418).epsilon(1e-12));
  CHECK(e_of_t(2, 1, std::int64_t{1} << 60) < 1e-6);
  for (std::int64_t t = 100; t < 10000; t += 97) {
    CHECK(e_of_t(100, 3, t + 1) < e_of_t(100, 3, t));
  }
  CHECK(r_of_t(65, 1, 2000) == doctest::Approx(40.0 + 5.0 * std::sqrt(6.0 * std::log(2000.0))).epsilon(1e-14));
  CHECK(r_of_t(65, 1, 2000) == doctest::Approx(std::sqrt(2000.0) * e_of_t(65, 1, 2000)).epsilon(1e-13));
}

TEST_CASE("CPAST rate bound") {
  BoundInputs in = single_spike(64, 1000, 10.0);
  in.c1 = 0.0;
  in.c2 = 0.0;
  CHECK(rate_bound_cpast(in) == 0.0);

  in.c1 = 1.0;
  in.c2 = 2.0;
  const double oracle = 11.0 / 100.0 * 63.0 / 1000.0 + 2.0 * 11.0 / 100.0 * std::log(1000.0) / 1000.0;
  CHECK(rate_bound_cpast(in) == doctest::Approx(oracle).epsilon(1e-14));

  // n >= 2t: both terms halve exactly under t -> 2t
  BoundInputs small = single_spike(4096, 500, 10.0);
  BoundInputs twice = small;
  twice.t = 1000;
  CHECK(rate_bound_cpast(twice) / rate_bound_cpast(small) == doctest::Approx(0.5).epsilon(1e-14));

  // t > n: the log term drifts by log(2t)/log(t)
  BoundInputs late = single_spike(64, 1000, 10.0);
  late.c1 = 0.0;
  BoundInputs later = late;
  later.t = 2000;
  CHECK(rate_bound_cpast(later) / rate_bound_cpast(late) ==
        doctest::Approx(0.5 * std::log(2000.0) / std::log(1000.0)).epsilon(1e-14));

  CHECK(rate_bound_cpast(single_spike(64, 1000, 1e12)) < 1e-10);
}

TEST_CASE("SCPAST rate bound") {
  BoundInputs in = single_spike(1024, 100, 5.0);
  CHECK_THROWS_AS(rate_bound_scpast(in), ConfigError);
  in.profile = SparsityProfile{1.0, {1.0}, 0.1};
  const double h = std::sqrt(6.0) / 5.0;
  const double rate = std::log(1024.0) / 100.0;
  const double m = 7.753211809977429;
  CHECK(rate_bound_scpast(in) == doctest::Approx(h * h * m * rate + 6.0 / 25.0 * rate).epsilon(1e-12));

  in.c1 = 0.0;
  in.c2 = 0.0;
  CHECK(rate_bound_scpast(in) == 0.0);

  // radius large enough that M(t) saturates at n
  BoundInputs cap = single_spike(64, 1000, 10.0);
  cap.profile = SparsityProfile{1.0, {1e9}, 0.1};
  cap.c2 = 0.0;
  const double hd = std::sqrt(11.0) / 10.0;
  CHECK(rate_bound_scpast(cap) == doctest::Approx(hd * hd * 64.0 * std::log(1000.0) / 1000.0).epsilon(1e-14));
}

TEST_CASE("sparse bound beats the dense bound on the block-spike configuration") {
  // 16 entries of 1/4: weak-l_0.5 radius 64 covers every order statistic.
  BoundInputs in = single_spike(1024, 2000, 30.0);
  in.profile = SparsityProfile{0.5, {64.0}, SparsityProfile::default_b(1.5, 1.0, 1)};
  CHECK(effective_dimension(2000, 1024, in.lambdas, *in.profile) < 100.0);
  CHECK(rate_bound_scpast(in) < rate_bound_cpast(in));
}

TEST_CASE("recursion coefficients, warm-up bounds and validation") {
  BoundInputs in;
  in.n = 64;
  in.d = 2;
  in.t = 500;
  in.t0 = 200;
  in.horizon = 5000;
  in.lambdas = {20.0, 10.0};
  in.tau = 2.0;
  const RecursionCoefficients a = recursion_coefficients(in);
  CHECK(a.alpha0 == doctest::Approx(1.0 / 11.0).epsilon(1e-15));
  CHECK(a.alpha1 == doctest::Approx(std::sqrt(21.0) / 11.0).epsilon(1e-15));
  CHECK(a.alpha2 == doctest::Approx(21.0 / 11.0).epsilon(1e-15));

  const double alpha = r_of_t(64, 2, 5000) * 21.0 / 10.0;
  CHECK(init_error_bound(in) == doctest::Approx(alpha * alpha / 200.0).epsilon(1e-14));
  CHECK_FALSE(cpast_warmup_sufficient(in));
  in.t0 = static_cast<std::int64_t>(std::ceil(32.0 * alpha * alpha));
  CHECK(cpast_warmup_sufficient(in));

  in.profile = SparsityProfile{1.0, {2.0, 2.0}, 0.1};
  const double m = effective_dimension(5000, 64, in.lambdas, *in.profile);
  const double need = (std::sqrt(11.0) / 10.0 * std::sqrt(m) + 1.0) * 2.1 * std::sqrt(std::log(5000.0));
  in.t0 = static_cast<std::int64_t>(std::floor(need * need));
  CHECK_FALSE(scpast_warmup_sufficient(in));
  in.t0 += 1;
  CHECK(scpast_warmup_sufficient(in));

  in.tau = 1.5;
  CHECK_THROWS_AS(validate(in), ConfigError);
  in.tau = 2.0;
  in.lambdas = {20.0};
  CHECK_THROWS_AS(validate(in), ConfigError);
  in.lambdas = {20.0, 10.0};
  in.d = 64;
  CHECK_THROWS_AS(validate(in), ConfigError);
}
