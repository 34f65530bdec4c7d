#pragma once

#include "scpast/linalg.hpp"
#include "scpast/sparsity.hpp"
#include "scpast/trackers.hpp"
#include "scpast/wavelet.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scpast {

enum class EigvecSource { support, wavelet, random, csv };
enum class Domain { signal, wavelet };

/// Everything one experiment needs. Parsed from a `key = value` file; see
/// README.md for the schema. Optional fields have context-dependent defaults
/// resolved by the accessors below.
struct ExperimentConfig {
  // model
  std::optional<Index> n;
  Index d = 1;
  std::vector<double> lambdas;
  double sigma = 1.0;
  EigvecSource source = EigvecSource::support;
  Index support_size = 1;
  Index support_offset = 0;
  std::vector<std::string> wavelet_functions;
  std::uint64_t eigvec_seed = 0;
  std::string eigvec_file;
  std::optional<Domain> domain;
  wavelet::Family wavelet = wavelet::Family::symmlet8;
  std::optional<int> wavelet_levels;

  // tracker
  std::vector<TrackerMode> modes = {TrackerMode::cpast, TrackerMode::scpast};
  std::optional<double> gamma;
  ThresholdRule rule;
  std::int64_t t0 = 100;
  std::optional<double> gamma0;
  double diag_exponent = 1.0;
  bool fast = false;
  bool safeguard = true;
  bool selection_fallback = true;
  bool strict_bounds = false;

  // run
  std::optional<std::int64_t> horizon;  // T
  std::vector<std::uint64_t> seeds = {1};
  std::int64_t lag = 1;
  std::string output;

  // bound overlays
  std::optional<double> c1;
  std::optional<double> c2;
  double tau = 1.0;
  std::optional<double> r;
  std::vector<double> s;
  std::optional<double> b;
};

/// Throws ConfigError listing every offending line or field.
ExperimentConfig parse_config(std::string_view text);

/// Throws IoError if the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

std::vector<TrackerMode> parse_modes(std::string_view text);
std::vector<std::uint64_t> parse_seeds(std::string_view text);

/// Checks every field against the module preconditions. `input_dim` is the
/// column count of an ingested stream (0 when simulating). Returns warnings
/// for soft violations (schedule constants below their admissible bounds);
/// they become errors when strict_bounds is set. With `tracking` false only
/// the model and run fields are checked (simulation). Throws ConfigError.
std::vector<std::string> validate(const ExperimentConfig& cfg, Index input_dim = 0,
                                  bool tracking = true);

/// Identifies the experiment: every field except seeds, modes and output.
std::uint64_t config_hash(const ExperimentConfig& cfg);

Index resolved_n(const ExperimentConfig& cfg, Index input_dim = 0);
/// 1 for simulated data, 0.9 for ingested streams unless configured.
double resolved_gamma(const ExperimentConfig& cfg, bool ingesting);
Domain resolved_domain(const ExperimentConfig& cfg);
wavelet::WaveletFilter resolved_filter(const ExperimentConfig& cfg, Index n);
/// gamma0 if set, else the admissible lower bound for (n, T, t0).
double resolved_gamma0(const ExperimentConfig& cfg, Index n, std::int64_t horizon);
SparsityProfile resolved_profile(const ExperimentConfig& cfg);

}  // namespace scpast
