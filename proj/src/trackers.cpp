#include "scpast/trackers.hpp"

#include "scpast/errors.hpp"
#include "scpast/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scpast {

namespace {

CovarianceAccumulator prime(const Matrix& warmup, double gamma) {
  CovarianceAccumulator acc(warmup.cols(), gamma);
  for (Index t = 0; t < warmup.rows(); ++t) {
    acc.add(warmup.row(t).transpose());
  }
  return acc;
}

void require_warmup(const Matrix& warmup, Index d) {
  if (d < 1 || d >= warmup.cols()) {
    throw RankDeficientWarmup("target dimension d must satisfy 1 <= d < n");
  }
  if (warmup.rows() < d) {
    throw RankDeficientWarmup("warm-up has " + std::to_string(warmup.rows()) +
                              " observations, fewer than d = " + std::to_string(d));
  }
}

}  // namespace

std::string_view mode_name(TrackerMode mode) {
  return mode == TrackerMode::cpast ? "cpast" : "scpast";
}

TrackerMode parse_mode(std::string_view name) {
  if (name == "cpast") {
    return TrackerMode::cpast;
  }
  if (name == "scpast") {
    return TrackerMode::scpast;
  }
  throw ConfigError("unknown tracker mode '" + std::string(name) + "'");
}

Tracker::Tracker(OrthonormalFrame start, CovarianceAccumulator acc,
                 std::optional<SparseSchedule> schedule)
    : estimate_(std::move(start)), acc_(std::move(acc)), schedule_(std::move(schedule)) {
  if (estimate_.n() != acc_.n()) {
    throw DimensionMismatch("frame and accumulator dimensions differ");
  }
  if (schedule_ && static_cast<Index>(schedule_->lambdas.size()) != estimate_.d()) {
    throw DimensionMismatch("threshold schedule needs one eigenvalue per column");
  }
}

Tracker Tracker::init_svd(const Matrix& warmup, Index d, double gamma) {
  require_warmup(warmup, d);
  CovarianceAccumulator acc = prime(warmup, gamma);
  SymmetricEigen eig = top_d_eigenvectors(acc.normalized(), d);
  const double top = eig.eigenvalues(0);
  if (!(top > 0.0) || eig.eigenvalues(d - 1) <= 1e-12 * top) {
    throw RankDeficientWarmup("warm-up observations span fewer than d directions");
  }
  return Tracker(std::move(eig.eigenvectors), std::move(acc));
}

Tracker Tracker::init_sparse(const Matrix& warmup, const InitConfig& cfg, SparseSchedule schedule,
                             double gamma) {
  require_warmup(warmup, cfg.d);
  const Index n = warmup.cols();
  const auto t0 = static_cast<double>(warmup.rows());
  const Vector diag = warmup.colwise().squaredNorm().transpose() / t0;

  const double rate = std::log(std::max(static_cast<double>(n), t0)) / t0;
  const double cut = cfg.noise_variance + cfg.gamma0 * std::pow(rate, cfg.diag_exponent);
  std::vector<Index> chosen;
  for (Index k = 0; k < n; ++k) {
    if (diag(k) > cut) {
      chosen.push_back(k);
    }
  }

  std::vector<std::string> warnings;
  if (static_cast<Index>(chosen.size()) < cfg.d) {
    if (!cfg.allow_fallback) {
      throw EmptySelection("diagonal selection kept " + std::to_string(chosen.size()) +
                           " coordinates, fewer than d = " + std::to_string(cfg.d));
    }
    warnings.push_back("diagonal selection kept " + std::to_string(chosen.size()) +
                       " coordinates; using the " + std::to_string(cfg.d) +
                       " largest diagonal entries");
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return diag(a) > diag(b); });
    chosen.assign(order.begin(), order.begin() + cfg.d);
    std::sort(chosen.begin(), chosen.end());
  }

  const auto g = static_cast<Index>(chosen.size());
  Matrix rows(warmup.rows(), g);
  for (Index j = 0; j < g; ++j) {
    rows.col(j) = warmup.col(chosen[j]);
  }
  const Matrix block = rows.transpose() * rows / t0;

  // Leading eigenvectors of the selected block, zero on every other coordinate.
  const SymmetricEigen eig = top_d_eigenvectors(block, cfg.d);
  Matrix start = Matrix::Zero(n, cfg.d);
  for (Index j = 0; j < g; ++j) {
    start.row(chosen[j]) = eig.eigenvectors.basis().row(j);
  }

  Tracker tracker(OrthonormalFrame(std::move(start)), prime(warmup, gamma), std::move(schedule));
  tracker.warnings_ = std::move(warnings);
  tracker.selected_ = std::move(chosen);
  return tracker;
}

void Tracker::step(const Vector& x) {
  acc_.add(x);
  advance(&x);
}

void Tracker::iterate() {
  if (acc_.count() == 0) {
    throw EmptyAccumulator("cannot iterate on an empty accumulator");
  }
  fast_ready_ = false;
  advance(nullptr);
}

void Tracker::set_fast_multiply(bool enabled) {
  if (enabled && schedule_) {
    throw std::invalid_argument("fast multiplication is only defined for CPAST");
  }
  fast_ = enabled;
  fast_ready_ = false;
}

void Tracker::advance(const Vector* x) {
  const Matrix& v_prev = estimate_.basis();
  if (fast_ && x != nullptr && fast_ready_) {
    const Matrix c = previous_.transpose() * v_prev;
    upsilon_ = acc_.gamma() * (upsilon_ * c) + (*x) * (x->transpose() * v_prev);
  } else {
    kernels::omp::symmetric_times_frame(acc_.sum(), v_prev, upsilon_);
  }
  if (fast_ && x != nullptr) {
    previous_ = v_prev;
    fast_ready_ = true;
  }

  Matrix y = normalize_ ? Matrix(upsilon_ * acc_.normalization()) : upsilon_;
  if (schedule_) {
    const std::vector<double> beta =
        threshold_vector(acc_.count(), schedule_->lambdas, acc_.n(), schedule_->rule.a);
    if (threshold_columns(y, beta, schedule_->rule.kind, schedule_->safeguard) > 0) {
      ++safeguard_steps_;
    }
  }
  estimate_ = symmetric_orthogonalize(y);
}

}  // namespace scpast
