#pragma once

#include "scpast/config.hpp"
#include "scpast/linalg.hpp"
#include "scpast/model.hpp"
#include "scpast/trackers.hpp"
#include "scpast/wavelet.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scpast {

struct TraceRecord {
  std::int64_t t;
  double l;
};

/// Error of one tracker on one stream, one record per time step.
struct ErrorTrace {
  TrackerMode mode = TrackerMode::cpast;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<TraceRecord> records;
  std::vector<std::string> warnings;
};

/// Tracker knobs shared by every run of an experiment.
struct TrackerSettings {
  TrackerMode mode = TrackerMode::cpast;
  Index d = 1;
  std::vector<double> lambdas;
  double gamma = 1.0;
  ThresholdRule rule;
  std::int64_t t0 = 100;
  double gamma0 = 0.0;
  double diag_exponent = 1.0;
  bool fast = false;
  bool safeguard = true;
  bool selection_fallback = true;
};

struct TrackResult {
  ErrorTrace trace;
  /// Final estimate, mapped back to the input domain.
  OrthonormalFrame final_estimate;
};

/// Closed-form test functions on the grid u_k = (k + 0.5) / n, scaled to unit length.
///   step:       1 on [0.2, 0.45), -0.6 on [0.6, 0.8), 0 elsewhere
///   three_peak: sum of exp(-((u - c) / 0.03)^2 / 2) with (c, height) =
///               (0.2, 1), (0.5, 0.8), (0.8, 0.6)
///   one_peak:   exp(-((u - 0.5) / 0.02)^2 / 2)
Vector synth_function(std::string_view name, Index n);

/// Ground-truth eigenvectors in the signal domain.
OrthonormalFrame build_eigenvectors(const ExperimentConfig& cfg);

SpikeModel build_model(const ExperimentConfig& cfg);

TrackerSettings tracker_settings(const ExperimentConfig& cfg, TrackerMode mode, Index n,
                                 std::int64_t horizon, bool ingesting);

/// T observations (one per row) in the signal domain for one seed.
Matrix simulate(const ExperimentConfig& cfg, std::uint64_t seed);

/// Runs one tracker over `observations` (rows in the tracking domain). The
/// first t0 rows initialize it; every later row is one step. With `truth`
/// the trace holds l(truth, V(t)) for t = t0..T; without it, the self-drift
/// l(V(t - lag), V(t)) for t = t0 + lag..T. Estimates pass through
/// `to_signal` (inverse wavelet transform) before any comparison.
TrackResult run_tracker(const Matrix& observations, const TrackerSettings& settings,
                        const OrthonormalFrame* truth,
                        const wavelet::WaveletFilter* to_signal = nullptr,
                        std::int64_t lag = 1);

/// All configured modes on one simulated stream.
std::vector<ErrorTrace> run_seed(const ExperimentConfig& cfg, std::uint64_t seed);

/// Every (mode, seed) pair; seeds run as parallel tasks. Output is ordered
/// by (mode, seed) regardless of execution order.
std::vector<ErrorTrace> run_experiment(const ExperimentConfig& cfg);

struct IngestResult {
  std::vector<ErrorTrace> traces;
  std::vector<OrthonormalFrame> final_estimates;  // parallel to traces
};

/// Self-drift tracking of an ingested stream (rows = time).
IngestResult track_stream(const ExperimentConfig& cfg, const Matrix& observations);

struct AggregateRow {
  TrackerMode mode;
  std::int64_t t;
  std::size_t count;
  double median;
  double q25;
  double q75;
  std::optional<double> bound;
};

/// Linear-interpolation quantile (type 7) of unsorted values.
double quantile(std::vector<double> values, double p);

/// Per (mode, t) median and quartiles across traces. Throws ConfigError if
/// the traces carry different config hashes.
std::vector<AggregateRow> aggregate(std::span<const ErrorTrace> traces);

/// Fills AggregateRow::bound with the rate bound of each mode when the
/// config supplies c1 and c2.
void add_bound_overlay(std::vector<AggregateRow>& rows, const ExperimentConfig& cfg);

}  // namespace scpast
