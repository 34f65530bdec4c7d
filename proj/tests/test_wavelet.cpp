#include "scpast/errors.hpp"
#include "scpast/wavelet.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace scpast;
using namespace scpast::wavelet;

TEST_CASE("haar hand cases") {
  const WaveletFilter haar(Family::haar, 2);
  const Vector ones = Vector::Ones(4);
  Vector expected = Vector::Zero(4);
  expected(0) = 2.0;
  CHECK((dwt(ones, haar) - expected).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((idwt(expected, haar) - ones).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(dwt(Vector::Zero(8), haar).isZero(0.0));

  // one level: pairwise sums then pairwise differences
  const WaveletFilter one(Family::haar, 1);
  Vector x(4);
  x << 1.0, 3.0, -2.0, 6.0;
  const double r = 1.0 / std::sqrt(2.0);
  Vector oracle(4);
  oracle << r * 4.0, r * 4.0, r * (1.0 - 3.0), r * (-2.0 - 6.0);
  const Vector c = dwt(x, one);
  CHECK(std::abs(c(0) - oracle(0)) <= 1e-15);
  CHECK(std::abs(c(1) - oracle(1)) <= 1e-15);
  CHECK(std::abs(std::abs(c(2)) - std::abs(oracle(2))) <= 1e-15);
  CHECK(std::abs(std::abs(c(3)) - std::abs(oracle(3))) <= 1e-15);
}

TEST_CASE("filters are orthonormal") {
  for (Family f : {Family::haar, Family::symmlet8}) {
    const WaveletFilter w(f, 1);
    const auto& h = w.lowpass();
    const auto& g = w.highpass();
    const auto len = static_cast<long>(h.size());
    double sum = 0.0;
    for (double hk : h) {
      sum += hk;
    }
    CHECK(sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    for (long m = 0; 2 * m < len; ++m) {
      double hh = 0.0;
      double gg = 0.0;
      double hg = 0.0;
      for (long k = 0; k + 2 * m < len; ++k) {
        hh += h[k] * h[k + 2 * m];
        gg += g[k] * g[k + 2 * m];
      }
      for (long k = 0; k < len; ++k) {
        if (k + 2 * m < len) {
          hg += h[k] * g[k + 2 * m];
        }
      }
      CHECK(std::abs(hh - (m == 0 ? 1.0 : 0.0)) <= 1e-12);
      CHECK(std::abs(gg - (m == 0 ? 1.0 : 0.0)) <= 1e-12);
      CHECK(std::abs(hg) <= 1e-12);
    }
  }
}

TEST_CASE("symmlet8 highpass has eight vanishing moments") {
  const WaveletFilter w(Family::symmlet8, 1);
  const auto& g = w.highpass();
  REQUIRE(g.size() == 16);
  for (int p = 0; p < 8; ++p) {
    double moment = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double kp = std::pow(static_cast<double>(k), p);
      moment += kp * g[k];
      scale += kp * std::abs(g[k]);
    }
    CHECK(std::abs(moment) <= 1e-9 * scale);
  }
}

TEST_CASE("perfect reconstruction, Parseval and inner products") {
  GaussianStream rng(StreamSeed{51});
  for (Family f : {Family::haar, Family::symmlet8}) {
    for (Index n : {64, 128, 256, 1024}) {
      for (int levels = 1; levels <= 5; ++levels) {
        const WaveletFilter w(f, levels);
        const Vector x = scpast::testing::gaussian_vector(rng, n);
        const Vector y = scpast::testing::gaussian_vector(rng, n);
        const Vector cx = dwt(x, w);
        const Vector cy = dwt(y, w);
        CHECK((idwt(cx, w) - x).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(std::abs(cx.norm() - x.norm()) <= 1e-10 * x.norm());
        CHECK(std::abs(cx.dot(cy) - x.dot(y)) <= 1e-10 * x.norm() * y.norm());
      }
    }
  }
}

TEST_CASE("idwt is linear") {
  GaussianStream rng(StreamSeed{52});
  const WaveletFilter w(Family::symmlet8, 4);
  const Vector c1 = scpast::testing::gaussian_vector(rng, 128);
  const Vector c2 = scpast::testing::gaussian_vector(rng, 128);
  CHECK((idwt(c1 + c2, w) - idwt(c1, w) - idwt(c2, w)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("column transforms act column by column") {
  GaussianStream rng(StreamSeed{53});
  const WaveletFilter w(Family::symmlet8, default_levels(64));
  const Matrix m = scpast::testing::gaussian_matrix(rng, 64, 3);
  const Matrix c = dwt_columns(m, w);
  for (Index j = 0; j < 3; ++j) {
    CHECK((c.col(j) - dwt(m.col(j), w)).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK((idwt_columns(c, w) - m).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("default levels and length errors") {
  CHECK(default_levels(1024) == 7);
  CHECK(default_levels(64) == 3);
  CHECK(default_levels(8) == 1);
  CHECK(default_levels(96) == 2);
  CHECK(default_levels(7) == 1);
  const WaveletFilter w(Family::haar, 3);
  CHECK_THROWS_AS(dwt(Vector::Zero(12), w), BadLength);
  CHECK_THROWS_AS(idwt(Vector::Zero(4), w), BadLength);
  CHECK_THROWS_AS(WaveletFilter(Family::haar, 0), BadLength);
  CHECK(parse_family("symmlet8") == Family::symmlet8);
  CHECK(parse_family("haar") == Family::haar);
  CHECK_THROWS_AS(parse_family("db4"), ConfigError);
}
