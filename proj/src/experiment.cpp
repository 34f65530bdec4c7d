#include "scpast/experiment.hpp"

#include "scpast/bounds.hpp"
#include "scpast/csv.hpp"
#include "scpast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <map>

namespace scpast {

namespace {

OrthonormalFrame to_signal_domain(const OrthonormalFrame& frame, const wavelet::WaveletFilter* filter) {
  if (filter == nullptr) {
    return frame;
  }
  return OrthonormalFrame(wavelet::idwt_columns(frame.basis(), *filter));
}

Matrix transform_rows(const Matrix& rows, const wavelet::WaveletFilter& filter) {
  Matrix out(rows.rows(), rows.cols());
  for (Index t = 0; t < rows.rows(); ++t) {
    out.row(t) = wavelet::dwt(rows.row(t).transpose(), filter).transpose();
  }
  return out;
}

Tracker initialize(const Matrix& warmup, const TrackerSettings& s) {
  if (s.mode == TrackerMode::cpast) {
    Tracker tracker = Tracker::init_svd(warmup, s.d, s.gamma);
    tracker.set_fast_multiply(s.fast);
    return tracker;
  }
  InitConfig init;
  init.t0 = warmup.rows();
  init.d = s.d;
  init.gamma0 = s.gamma0;
  init.diag_exponent = s.diag_exponent;
  init.allow_fallback = s.selection_fallback;
  SparseSchedule schedule{s.rule, s.lambdas, s.safeguard};
  return Tracker::init_sparse(warmup, init, std::move(schedule), s.gamma);
}

}  // namespace

Vector synth_function(std::string_view name, Index n) {
  Vector f(n);
  for (Index k = 0; k < n; ++k) {
    const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    auto bump = [u](double c, double w) { return std::exp(-0.5 * ((u - c) / w) * ((u - c) / w)); };
    if (name == "step") {
      f(k) = (u >= 0.2 && u < 0.45) ? 1.0 : (u >= 0.6 && u < 0.8) ? -0.6 : 0.0;
    } else if (name == "three_peak") {
      f(k) = bump(0.2, 0.03) + 0.8 * bump(0.5, 0.03) + 0.6 * bump(0.8, 0.03);
    } else if (name == "one_peak") {
      f(k) = bump(0.5, 0.02);
    } else {
      throw ConfigError("unknown test function '" + std::string(name) + "'");
    }
  }
  const double norm = f.norm();
  if (!(norm > 0.0)) {
    throw ConfigError("test function '" + std::string(name) + "' vanishes on this grid");
  }
  return f / norm;
}

OrthonormalFrame build_eigenvectors(const ExperimentConfig& cfg) {
  const Index n = resolved_n(cfg);
  const Index d = cfg.d;
  switch (cfg.source) {
    case EigvecSource::support: {
      Matrix v = Matrix::Zero(n, d);
      const double entry = 1.0 / std::sqrt(static_cast<double>(cfg.support_size));
      for (Index i = 0; i < d; ++i) {
        v.block(cfg.support_offset + i * cfg.support_size, i, cfg.support_size, 1).setConstant(entry);
      }
      return OrthonormalFrame(std::move(v));
    }
    case EigvecSource::wavelet: {
      Matrix v(n, d);
      for (Index i = 0; i < d; ++i) {
        v.col(i) = synth_function(cfg.wavelet_functions[static_cast<std::size_t>(i)], n);
      }
      return d == 1 ? OrthonormalFrame(std::move(v)) : symmetric_orthogonalize(v);
    }
    case EigvecSource::random: {
      GaussianStream rng(StreamSeed{cfg.eigvec_seed});
      Matrix v(n, d);
      for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < n; ++i) {
          v(i, j) = rng.next();
        }
      }
      return symmetric_orthogonalize(v);
    }
    case EigvecSource::csv: {
      const csv::Table table = csv::read(cfg.eigvec_file);
      if (table.values.rows() != n || table.values.cols() != d) {
        throw ConfigError("eigvec_file must hold an n x d matrix");
      }
      try {
        return OrthonormalFrame(table.values);
      } catch (const NotOrthonormal& e) {
        throw ConfigError(std::string("eigvec_file: ") + e.what());
      }
    }
  }
  throw ConfigError("unknown eigenvector source");
}

SpikeModel build_model(const ExperimentConfig& cfg) {
  return SpikeModel(cfg.lambdas, build_eigenvectors(cfg), cfg.sigma);
}

TrackerSettings tracker_settings(const ExperimentConfig& cfg, TrackerMode mode, Index n,
                                 std::int64_t horizon, bool ingesting) {
  TrackerSettings s;
  s.mode = mode;
  s.d = cfg.d;
  s.lambdas = cfg.lambdas;
  s.gamma = resolved_gamma(cfg, ingesting);
  s.rule = cfg.rule;
  s.t0 = cfg.t0;
  s.gamma0 = resolved_gamma0(cfg, n, horizon);
  s.diag_exponent = cfg.diag_exponent;
  s.fast = cfg.fast && mode == TrackerMode::cpast;
  s.safeguard = cfg.safeguard;
  s.selection_fallback = cfg.selection_fallback;
  return s;
}

Matrix simulate(const ExperimentConfig& cfg, std::uint64_t seed) {
  const SpikeModel model = build_model(cfg);
  GaussianStream rng(StreamSeed{seed});
  return sample_observations(model, rng, *cfg.horizon);
}

TrackResult run_tracker(const Matrix& observations, const TrackerSettings& settings,
                        const OrthonormalFrame* truth, const wavelet::WaveletFilter* to_signal,
                        std::int64_t lag) {
  const std::int64_t horizon = observations.rows();
  if (settings.t0 > horizon) {
    throw ConfigError("stream has " + std::to_string(horizon) + " observations, fewer than t0");
  }
  if (truth != nullptr && truth->n() != observations.cols()) {
    throw DimensionMismatch("ground truth and observations differ in dimension");
  }
  Tracker tracker = initialize(observations.topRows(settings.t0), settings);

  ErrorTrace trace;
  trace.mode = settings.mode;
  trace.warnings = tracker.warnings();
  trace.records.reserve(static_cast<std::size_t>(horizon - settings.t0 + 1));
  std::deque<OrthonormalFrame> history;

  auto record = [&]() {
    OrthonormalFrame current = to_signal_domain(tracker.estimate(), to_signal);
    if (truth != nullptr) {
      trace.records.push_back({tracker.t(), subspace_distance(*truth, current)});
      return current;
    }
    history.push_back(current);
    if (static_cast<std::int64_t>(history.size()) > lag) {
      trace.records.push_back({tracker.t(), subspace_distance(history.front(), current)});
      history.pop_front();
    }
    return current;
  };

  OrthonormalFrame last = record();
  for (std::int64_t t = settings.t0; t < horizon; ++t) {
    tracker.step(observations.row(t).transpose());
    last = record();
  }
  if (tracker.safeguard_steps() > 0) {
    trace.warnings.push_back("rank safeguard fired in " + std::to_string(tracker.safeguard_steps()) +
                             " steps");
  }
  return {std::move(trace), std::move(last)};
}

std::vector<ErrorTrace> run_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
  const Index n = resolved_n(cfg);
  const std::int64_t horizon = *cfg.horizon;
  const OrthonormalFrame truth = build_eigenvectors(cfg);
  Matrix observations = simulate(cfg, seed);

  std::optional<wavelet::WaveletFilter> filter;
  if (resolved_domain(cfg) == Domain::wavelet) {
    filter.emplace(resolved_filter(cfg, n));
    observations = transform_rows(observations, *filter);
  }

  const std::uint64_t hash = config_hash(cfg);
  std::vector<ErrorTrace> traces;
  for (TrackerMode mode : cfg.modes) {
    const TrackerSettings settings = tracker_settings(cfg, mode, n, horizon, false);
    TrackResult result =
        run_tracker(observations, settings, &truth, filter ? &*filter : nullptr, cfg.lag);
    result.trace.seed = seed;
    result.trace.config_hash = hash;
    traces.push_back(std::move(result.trace));
  }
  return traces;
}

std::vector<ErrorTrace> run_experiment(const ExperimentConfig& cfg) {
  const auto count = static_cast<std::int64_t>(cfg.seeds.size());
  std::vector<std::vector<ErrorTrace>> per_seed(cfg.seeds.size());
  std::vector<std::exception_ptr> failures(cfg.seeds.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      per_seed[static_cast<std::size_t>(i)] = run_seed(cfg, cfg.seeds[static_cast<std::size_t>(i)]);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) {
      std::rethrow_exception(failure);
    }
  }

  std::vector<ErrorTrace> traces;
  for (auto& group : per_seed) {
    for (auto& trace : group) {
      traces.push_back(std::move(trace));
    }
  }
  std::stable_sort(traces.begin(), traces.end(), [](const ErrorTrace& a, const ErrorTrace& b) {
    if (a.mode != b.mode) {
      return a.mode < b.mode;
    }
    return a.seed < b.seed;
  });
  return traces;
}

IngestResult track_stream(const ExperimentConfig& cfg, const Matrix& observations) {
  const Index n = observations.cols();
  Matrix rows = observations;
  if (cfg.horizon && *cfg.horizon < rows.rows()) {
    rows.conservativeResize(*cfg.horizon, Eigen::NoChange);
  }
  std::optional<wavelet::WaveletFilter> filter;
  if (resolved_domain(cfg) == Domain::wavelet) {
    filter.emplace(resolved_filter(cfg, n));
    rows = transform_rows(rows, *filter);
  }
  const std::uint64_t hash = config_hash(cfg);
  IngestResult result;
  for (TrackerMode mode : cfg.modes) {
    const TrackerSettings settings = tracker_settings(cfg, mode, n, rows.rows(), true);
    TrackResult run = run_tracker(rows, settings, nullptr, filter ? &*filter : nullptr, cfg.lag);
    run.trace.seed = 0;
    run.trace.config_hash = hash;
    result.traces.push_back(std::move(run.trace));
    result.final_estimates.push_back(std::move(run.final_estimate));
  }
  return result;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) {
    throw ConfigError("quantile of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<AggregateRow> aggregate(std::span<const ErrorTrace> traces) {
  if (traces.empty()) {
    return {};
  }
  const std::uint64_t hash = traces.front().config_hash;
  std::map<std::pair<TrackerMode, std::int64_t>, std::vector<double>> groups;
  for (const ErrorTrace& trace : traces) {
    if (trace.config_hash != hash) {
      throw ConfigError("refusing to aggregate traces from different configurations");
    }
    for (const TraceRecord& rec : trace.records) {
      groups[{trace.mode, rec.t}].push_back(rec.l);
    }
  }
  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (auto& [key, values] : groups) {
    rows.push_back({key.first, key.second, values.size(), quantile(values, 0.5),
                    quantile(values, 0.25), quantile(values, 0.75), std::nullopt});
  }
  return rows;
}

void add_bound_overlay(std::vector<AggregateRow>& rows, const ExperimentConfig& cfg) {
  if (!cfg.c1 || !cfg.c2) {
    return;
  }
  bounds::BoundInputs in;
  in.n = resolved_n(cfg);
  in.d = cfg.d;
  in.t0 = cfg.t0;
  in.horizon = cfg.horizon.value_or(0);
  in.lambdas = cfg.lambdas;
  in.tau = cfg.tau;
  in.a = cfg.rule.a;
  in.c1 = *cfg.c1;
  in.c2 = *cfg.c2;
  if (cfg.r && static_cast<Index>(cfg.s.size()) == cfg.d) {
    in.profile = resolved_profile(cfg);
  }
  for (AggregateRow& row : rows) {
    in.t = row.t;
    row.bound = row.mode == TrackerMode::cpast ? bounds::rate_bound_cpast(in)
                                               : bounds::rate_bound_scpast(in);
  }
}

}  // namespace scpast
