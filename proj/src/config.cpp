#include "scpast/config.hpp"

#include "scpast/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace scpast {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    parts.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return parts;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(s) + "' is not a finite number");
  }
  return v;
}

std::int64_t to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("'" + std::string(s) + "' is not an integer");
  }
  return v;
}

std::uint64_t to_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("'" + std::string(s) + "' is not an unsigned integer");
  }
  return v;
}

bool to_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    return false;
  }
  throw ConfigError("'" + std::string(s) + "' is not a boolean");
}

std::vector<double> to_doubles(std::string_view s) {
  std::vector<double> out;
  for (auto part : split_list(s)) {
    out.push_back(to_double(part));
  }
  return out;
}

bool is_auto(std::string_view s) { return s == "auto"; }

void apply(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "n") {
    cfg.n = to_int(value);
  } else if (key == "d") {
    cfg.d = to_int(value);
  } else if (key == "lambdas") {
    cfg.lambdas = to_doubles(value);
  } else if (key == "sigma") {
    cfg.sigma = to_double(value);
  } else if (key == "eigvec_source") {
    if (value == "support") {
      cfg.source = EigvecSource::support;
    } else if (value == "wavelet") {
      cfg.source = EigvecSource::wavelet;
    } else if (value == "random") {
      cfg.source = EigvecSource::random;
    } else if (value == "csv") {
      cfg.source = EigvecSource::csv;
    } else {
      throw ConfigError("expected support, wavelet, random or csv");
    }
  } else if (key == "support_size") {
    cfg.support_size = to_int(value);
  } else if (key == "support_offset") {
    cfg.support_offset = to_int(value);
  } else if (key == "wavelet_function") {
    cfg.wavelet_functions.clear();
    for (auto part : split_list(value)) {
      cfg.wavelet_functions.emplace_back(part);
    }
  } else if (key == "eigvec_seed") {
    cfg.eigvec_seed = to_uint(value);
  } else if (key == "eigvec_file") {
    cfg.eigvec_file = std::string(value);
  } else if (key == "domain") {
    if (value == "signal") {
      cfg.domain = Domain::signal;
    } else if (value == "wavelet") {
      cfg.domain = Domain::wavelet;
    } else {
      throw ConfigError("expected signal or wavelet");
    }
  } else if (key == "wavelet") {
    cfg.wavelet = wavelet::parse_family(value);
  } else if (key == "wavelet_levels") {
    cfg.wavelet_levels = is_auto(value) ? std::nullopt : std::optional<int>(to_int(value));
  } else if (key == "mode") {
    cfg.modes = parse_modes(value);
  } else if (key == "gamma") {
    cfg.gamma = to_double(value);
  } else if (key == "a") {
    cfg.rule.a = to_double(value);
  } else if (key == "rule") {
    if (value == "hard") {
      cfg.rule.kind = ThresholdKind::hard;
    } else if (value == "soft") {
      cfg.rule.kind = ThresholdKind::soft;
    } else {
      throw ConfigError("expected hard or soft");
    }
  } else if (key == "t0") {
    cfg.t0 = to_int(value);
  } else if (key == "gamma0") {
    cfg.gamma0 = is_auto(value) ? std::nullopt : std::optional<double>(to_double(value));
  } else if (key == "diag_exponent") {
    cfg.diag_exponent = to_double(value);
  } else if (key == "fast") {
    cfg.fast = to_bool(value);
  } else if (key == "safeguard") {
    cfg.safeguard = to_bool(value);
  } else if (key == "selection_fallback") {
    cfg.selection_fallback = to_bool(value);
  } else if (key == "strict_bounds") {
    cfg.strict_bounds = to_bool(value);
  } else if (key == "T") {
    cfg.horizon = to_int(value);
  } else if (key == "seeds") {
    cfg.seeds = parse_seeds(value);
  } else if (key == "lag") {
    cfg.lag = to_int(value);
  } else if (key == "output") {
    cfg.output = std::string(value);
  } else if (key == "c1") {
    cfg.c1 = to_double(value);
  } else if (key == "c2") {
    cfg.c2 = to_double(value);
  } else if (key == "tau") {
    cfg.tau = to_double(value);
  } else if (key == "r") {
    cfg.r = to_double(value);
  } else if (key == "s") {
    cfg.s = to_doubles(value);
  } else if (key == "b") {
    cfg.b = is_auto(value) ? std::nullopt : std::optional<double>(to_double(value));
  } else {
    throw ConfigError("unknown key");
  }
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += items[i];
  }
  return out;
}

void canonical_doubles(std::ostringstream& os, const std::vector<double>& v) {
  for (double x : v) {
    os << x << ',';
  }
}

}  // namespace

std::vector<TrackerMode> parse_modes(std::string_view text) {
  if (text == "both") {
    return {TrackerMode::cpast, TrackerMode::scpast};
  }
  return {parse_mode(text)};
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (auto part : split_list(text)) {
    seeds.push_back(to_uint(part));
  }
  return seeds;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::vector<std::string> problems;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": empty key or value");
      continue;
    }
    if (!seen.insert(std::string(key)).second) {
      problems.push_back("line " + std::to_string(line_no) + ": duplicate key '" +
                         std::string(key) + "'");
      continue;
    }
    try {
      apply(cfg, key, value);
    } catch (const Error& e) {
      problems.push_back("line " + std::to_string(line_no) + ": " + std::string(key) + ": " +
                         e.what());
    }
  }
  if (!problems.empty()) {
    throw ConfigError(join(problems, "; "));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Index resolved_n(const ExperimentConfig& cfg, Index input_dim) {
  if (input_dim > 0) {
    return input_dim;
  }
  return cfg.n.value_or(0);
}

double resolved_gamma(const ExperimentConfig& cfg, bool ingesting) {
  return cfg.gamma.value_or(ingesting ? 0.9 : 1.0);
}

Domain resolved_domain(const ExperimentConfig& cfg) {
  if (cfg.domain) {
    return *cfg.domain;
  }
  return cfg.source == EigvecSource::wavelet ? Domain::wavelet : Domain::signal;
}

wavelet::WaveletFilter resolved_filter(const ExperimentConfig& cfg, Index n) {
  return wavelet::WaveletFilter(cfg.wavelet, cfg.wavelet_levels.value_or(wavelet::default_levels(n)));
}

double resolved_gamma0(const ExperimentConfig& cfg, Index n, std::int64_t horizon) {
  if (cfg.gamma0) {
    return *cfg.gamma0;
  }
  return min_schedule_constant(n, horizon, cfg.t0);
}

SparsityProfile resolved_profile(const ExperimentConfig& cfg) {
  SparsityProfile p;
  p.r = cfg.r.value_or(1.0);
  p.s = cfg.s;
  p.b = cfg.b.value_or(SparsityProfile::default_b(cfg.rule.a, cfg.tau, static_cast<std::size_t>(cfg.d)));
  return p;
}

std::vector<std::string> validate(const ExperimentConfig& cfg, Index input_dim, bool tracking) {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  const bool ingesting = input_dim > 0;
  const Index n = resolved_n(cfg, input_dim);
  auto fail = [&](const std::string& field, const std::string& msg) {
    errors.push_back(field + ": " + msg);
  };

  if (ingesting && cfg.n && *cfg.n != input_dim) {
    fail("n", "config says " + std::to_string(*cfg.n) + " but the input has " +
                  std::to_string(input_dim) + " columns");
  }
  if (n < 2) {
    fail("n", "ambient dimension must be at least 2");
  }
  if (cfg.d < 1 || (n >= 2 && cfg.d >= n)) {
    fail("d", "need 1 <= d < n");
  }
  const bool needs_lambdas =
      !ingesting || std::find(cfg.modes.begin(), cfg.modes.end(), TrackerMode::scpast) != cfg.modes.end();
  if (needs_lambdas) {
    if (static_cast<Index>(cfg.lambdas.size()) != cfg.d) {
      fail("lambdas", "need exactly d = " + std::to_string(cfg.d) + " values");
    }
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
      if (!(cfg.lambdas[i] > 0.0)) {
        fail("lambdas", "values must be positive");
        break;
      }
      if (i > 0 && cfg.lambdas[i] > cfg.lambdas[i - 1]) {
        fail("lambdas", "values must be non-increasing");
        break;
      }
    }
  }
  if (!ingesting) {
    if (!(cfg.sigma >= 0.0)) {
      fail("sigma", "must be nonnegative");
    }
    switch (cfg.source) {
      case EigvecSource::support:
        if (cfg.support_size < 1) {
          fail("support_size", "must be positive");
        } else if (cfg.support_offset < 0 || cfg.support_offset + cfg.d * cfg.support_size > n) {
          fail("support_offset", "d disjoint blocks of support_size entries must fit in n");
        }
        break;
      case EigvecSource::wavelet:
        if (static_cast<Index>(cfg.wavelet_functions.size()) != cfg.d) {
          fail("wavelet_function", "need one function name per eigenvector");
        }
        for (const auto& f : cfg.wavelet_functions) {
          if (f != "step" && f != "three_peak" && f != "one_peak") {
            fail("wavelet_function", "unknown function '" + f + "'");
          }
        }
        break;
      case EigvecSource::random:
        break;
      case EigvecSource::csv:
        if (cfg.eigvec_file.empty()) {
          fail("eigvec_file", "required when eigvec_source = csv");
        }
        break;
    }
  }
  if (resolved_domain(cfg) == Domain::wavelet && n >= 2) {
    const int levels = cfg.wavelet_levels.value_or(wavelet::default_levels(n));
    if (levels < 1 || levels > 30 || n % (Index{1} << levels) != 0) {
      fail("wavelet_levels", "n must be divisible by 2^levels with levels >= 1");
    }
  }
  if (cfg.modes.empty()) {
    fail("mode", "no tracker selected");
  }
  const double gamma = resolved_gamma(cfg, ingesting);
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    fail("gamma", "forgetting factor must lie in (0, 1]");
  }
  if (!(cfg.rule.a >= 0.0)) {
    fail("a", "must be nonnegative");
  }
  if (tracking && cfg.t0 < cfg.d) {
    fail("t0", "warm-up must contain at least d observations");
  }
  if (cfg.gamma0 && !(*cfg.gamma0 >= 0.0)) {
    fail("gamma0", "must be nonnegative");
  }
  if (!ingesting) {
    if (!cfg.horizon) {
      fail("T", "required for simulated runs");
    } else if (tracking && *cfg.horizon < cfg.t0) {
      fail("T", "must be at least t0");
    }
  }
  if (cfg.seeds.empty()) {
    fail("seeds", "at least one seed required");
  }
  if (cfg.lag < 1) {
    fail("lag", "must be at least 1");
  }
  if (cfg.c1.has_value() != cfg.c2.has_value()) {
    fail("c1", "c1 and c2 must be given together");
  }
  if (!(cfg.tau >= 1.0)) {
    fail("tau", "must be at least 1");
  }
  if (cfg.r && !(*cfg.r > 0.0 && *cfg.r < 2.0)) {
    fail("r", "must lie in (0, 2)");
  }
  if (cfg.c1 && std::find(cfg.modes.begin(), cfg.modes.end(), TrackerMode::scpast) != cfg.modes.end()) {
    if (!cfg.r || static_cast<Index>(cfg.s.size()) != cfg.d) {
      fail("s", "sparse bound overlay needs r and one radius per eigenvector");
    }
  }
  for (double si : cfg.s) {
    if (!(si > 0.0)) {
      fail("s", "radii must be positive");
      break;
    }
  }
  if (cfg.fast && cfg.modes.size() == 1 && cfg.modes.front() == TrackerMode::scpast) {
    fail("fast", "fast multiplication applies to CPAST only");
  }

  if (errors.empty() && !ingesting && tracking) {
    const std::int64_t horizon = *cfg.horizon;
    const double floor = min_schedule_constant(n, horizon, cfg.t0);
    const bool sparse = std::find(cfg.modes.begin(), cfg.modes.end(), TrackerMode::scpast) != cfg.modes.end();
    if (sparse && cfg.rule.a < floor) {
      warnings.push_back("a = " + std::to_string(cfg.rule.a) + " is below the admissible bound " +
                         std::to_string(floor));
    }
    if (sparse && resolved_gamma0(cfg, n, horizon) < floor) {
      warnings.push_back("gamma0 is below the admissible bound " + std::to_string(floor));
    }
    if (cfg.strict_bounds && !warnings.empty()) {
      for (const auto& w : warnings) {
        fail("strict_bounds", w);
      }
    }
  }

  if (!errors.empty()) {
    throw ConfigError(join(errors, "; "));
  }
  return warnings;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "n=" << cfg.n.value_or(0) << ";d=" << cfg.d << ";lambdas=";
  canonical_doubles(os, cfg.lambdas);
  os << ";sigma=" << cfg.sigma << ";source=" << static_cast<int>(cfg.source)
     << ";support=" << cfg.support_size << ',' << cfg.support_offset << ";functions=";
  for (const auto& f : cfg.wavelet_functions) {
    os << f << ',';
  }
  os << ";eigvec_seed=" << cfg.eigvec_seed << ";eigvec_file=" << cfg.eigvec_file
     << ";domain=" << (cfg.domain ? static_cast<int>(*cfg.domain) : -1)
     << ";wavelet=" << static_cast<int>(cfg.wavelet) << ',' << cfg.wavelet_levels.value_or(-1)
     << ";gamma=" << (cfg.gamma ? *cfg.gamma : -1.0) << ";rule=" << static_cast<int>(cfg.rule.kind)
     << ',' << cfg.rule.a << ";t0=" << cfg.t0 << ";gamma0=" << (cfg.gamma0 ? *cfg.gamma0 : -1.0)
     << ";diag_exponent=" << cfg.diag_exponent << ";fast=" << cfg.fast
     << ";safeguard=" << cfg.safeguard << ";fallback=" << cfg.selection_fallback
     << ";T=" << cfg.horizon.value_or(0) << ";lag=" << cfg.lag
     << ";c=" << (cfg.c1 ? *cfg.c1 : -1.0) << ',' << (cfg.c2 ? *cfg.c2 : -1.0)
     << ";tau=" << cfg.tau << ";r=" << cfg.r.value_or(-1.0) << ";s=";
  canonical_doubles(os, cfg.s);
  os << ";b=" << cfg.b.value_or(-1.0);

  // FNV-1a, 64 bit.
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace scpast
