#include "scpast/commands.hpp"

#include "scpast/config.hpp"
#include "scpast/csv.hpp"
#include "scpast/errors.hpp"
#include "scpast/experiment.hpp"
#include "scpast/kernels.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace scpast::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::filesystem::path resolve_output(const ExperimentConfig& cfg, const CommandOptions& opt) {
  if (opt.output) {
    return *opt.output;
  }
  if (!cfg.output.empty()) {
    return cfg.output;
  }
  throw ConfigError("output: no --output flag and no output key in the config");
}

nlohmann::json base_metadata(const std::string& command, const ExperimentConfig& cfg,
                             Clock::time_point started) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["config_hash"] = hex(config_hash(cfg));
  meta["seeds"] = cfg.seeds;
  std::vector<std::string> modes;
  for (TrackerMode m : cfg.modes) {
    modes.emplace_back(mode_name(m));
  }
  meta["modes"] = modes;
  meta["threads"] = kernels::omp::max_threads();
  meta["wall_clock_seconds"] = std::chrono::duration<double>(Clock::now() - started).count();
  return meta;
}

void add_warnings(nlohmann::json& meta, const std::vector<std::string>& config_warnings,
                  const std::vector<ErrorTrace>& traces) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& w : config_warnings) {
    list.push_back({{"scope", "config"}, {"message", w}});
  }
  for (const ErrorTrace& trace : traces) {
    for (const auto& w : trace.warnings) {
      list.push_back({{"scope", "trace"},
                      {"mode", std::string(mode_name(trace.mode))},
                      {"seed", trace.seed},
                      {"message", w}});
    }
  }
  meta["warnings"] = list;
}

std::string trace_csv(const std::vector<ErrorTrace>& traces) {
  std::ostringstream os;
  os << "mode,seed,t,l\n";
  for (const ErrorTrace& trace : traces) {
    for (const TraceRecord& rec : trace.records) {
      os << mode_name(trace.mode) << ',' << trace.seed << ',' << rec.t << ','
         << csv::format_double(rec.l) << '\n';
    }
  }
  return os.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows, bool with_bound) {
  std::ostringstream os;
  os << "mode,t,seeds,median,q25,q75" << (with_bound ? ",bound" : "") << '\n';
  for (const AggregateRow& row : rows) {
    os << mode_name(row.mode) << ',' << row.t << ',' << row.count << ','
       << csv::format_double(row.median) << ',' << csv::format_double(row.q25) << ','
       << csv::format_double(row.q75);
    if (with_bound) {
      os << ',' << (row.bound ? csv::format_double(*row.bound) : std::string());
    }
    os << '\n';
  }
  return os.str();
}

ExperimentConfig load_with_overrides(const CommandOptions& opt) {
  ExperimentConfig cfg = load_config(opt.config);
  if (opt.seeds) {
    cfg.seeds = parse_seeds(*opt.seeds);
  }
  if (opt.mode) {
    cfg.modes = parse_modes(*opt.mode);
  }
  if (opt.fast) {
    cfg.fast = true;
  }
  return cfg;
}

int simulate_command(const CommandOptions& opt) {
  const auto started = Clock::now();
  const ExperimentConfig cfg = load_with_overrides(opt);
  const auto warnings = validate(cfg, 0, false);
  if (cfg.seeds.size() != 1) {
    throw ConfigError("seeds: simulate writes one stream, give exactly one seed");
  }
  const auto output = resolve_output(cfg, opt);
  const Matrix obs = simulate(cfg, cfg.seeds.front());
  std::vector<std::string> header;
  for (Index k = 0; k < obs.cols(); ++k) {
    header.push_back("x" + std::to_string(k + 1));
  }
  std::ostringstream os;
  csv::write(os, header, obs);
  csv::write_file(output, os.str());

  nlohmann::json meta = base_metadata("simulate", cfg, started);
  add_warnings(meta, warnings, {});
  csv::write_file(metadata_path(output), meta.dump(2) + "\n");
  return kOk;
}

int track_command(const CommandOptions& opt) {
  const auto started = Clock::now();
  const ExperimentConfig cfg = load_with_overrides(opt);
  std::vector<ErrorTrace> traces;
  std::vector<std::string> warnings;
  const auto output_for = [&]() { return resolve_output(cfg, opt); };

  if (opt.input) {
    const csv::Table table = csv::read(*opt.input);
    if (table.values.rows() == 0) {
      throw CsvError(2, "input has a header but no observations");
    }
    warnings = validate(cfg, table.values.cols());
    const auto output = output_for();
    IngestResult result = track_stream(cfg, table.values);
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
      const std::string mode(mode_name(result.traces[i].mode));
      const Matrix& v = result.final_estimates[i].basis();
      std::vector<std::string> header;
      for (Index j = 0; j < v.cols(); ++j) {
        header.push_back("v" + std::to_string(j + 1));
      }
      std::ostringstream os;
      csv::write(os, header, v);
      csv::write_file(estimate_path(output, mode), os.str());
    }
    traces = std::move(result.traces);
    csv::write_file(output, trace_csv(traces));
    nlohmann::json meta = base_metadata("track", cfg, started);
    meta["input"] = opt.input->string();
    add_warnings(meta, warnings, traces);
    csv::write_file(metadata_path(output), meta.dump(2) + "\n");
    return kOk;
  }

  warnings = validate(cfg);
  const auto output = output_for();
  traces = run_experiment(cfg);
  csv::write_file(output, trace_csv(traces));
  nlohmann::json meta = base_metadata("track", cfg, started);
  add_warnings(meta, warnings, traces);
  csv::write_file(metadata_path(output), meta.dump(2) + "\n");
  return kOk;
}

int sweep_command(const CommandOptions& opt) {
  const auto started = Clock::now();
  const ExperimentConfig cfg = load_with_overrides(opt);
  const auto warnings = validate(cfg);
  const auto output = resolve_output(cfg, opt);
  const std::vector<ErrorTrace> traces = run_experiment(cfg);
  std::vector<AggregateRow> rows = aggregate(traces);
  add_bound_overlay(rows, cfg);
  csv::write_file(output, aggregate_csv(rows, cfg.c1.has_value()));
  nlohmann::json meta = base_metadata("sweep", cfg, started);
  add_warnings(meta, warnings, traces);
  csv::write_file(metadata_path(output), meta.dump(2) + "\n");
  return kOk;
}

}  // namespace

std::filesystem::path metadata_path(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  return p.replace_extension(".meta.json");
}

std::filesystem::path estimate_path(const std::filesystem::path& output, const std::string& mode) {
  std::filesystem::path p = output;
  return p.replace_extension("." + mode + ".estimate.csv");
}

int run_command(const std::string& command, const CommandOptions& options, std::ostream& err) {
  try {
    if (command == "simulate") {
      return simulate_command(options);
    }
    if (command == "track") {
      return track_command(options);
    }
    if (command == "sweep") {
      return sweep_command(options);
    }
    err << "error: unknown command '" << command << "'\n";
    return kConfigInvalid;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const InvalidModel& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const CsvError& e) {
    err << "malformed csv: " << e.what() << '\n';
    return kMalformedCsv;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace scpast::cli
