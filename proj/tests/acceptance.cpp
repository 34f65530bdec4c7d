// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "scpast/errors.hpp"
#include "scpast/experiment.hpp"
#include "scpast/sparsity.hpp"
#include "scpast/trackers.hpp"
#include "scpast/wavelet.hpp"
#include "test_support.hpp"

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace scpast;
using scpast::testing::gaussian_vector;
using scpast::testing::random_frame;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

OrthonormalFrame blocks(Index n, Index d, Index size) {
  Matrix v = Matrix::Zero(n, d);
  for (Index i = 0; i < d; ++i) {
    v.block(i * size, i, size, 1).setConstant(1.0 / std::sqrt(static_cast<double>(size)));
  }
  return OrthonormalFrame(v);
}

SparseSchedule hard(std::vector<double> lambdas, double a) {
  SparseSchedule s;
  s.rule = ThresholdRule{ThresholdKind::hard, a};
  s.lambdas = std::move(lambdas);
  return s;
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

Outcome orthonormality_suite() {
  double worst = 0.0;
  long steps = 0;
  for (Index n : {16, 64}) {
    for (Index d : {1, 3}) {
      std::vector<double> lambdas = d == 1 ? std::vector<double>{10.0} : std::vector<double>{10.0, 6.0, 4.0};
      const SpikeModel model(lambdas, blocks(n, d, 4), 1.0);
      GaussianStream rng(StreamSeed{static_cast<std::uint64_t>(n * 10 + d)});
      const Matrix x = sample_observations(model, rng, 1050);
      InitConfig init;
      init.t0 = 50;
      init.d = d;
      init.gamma0 = min_schedule_constant(n, 1050, 50);
      Tracker c = Tracker::init_svd(x.topRows(50), d);
      Tracker s = Tracker::init_sparse(x.topRows(50), init, hard(lambdas, 1.5));
      for (Index t = 50; t < x.rows(); ++t) {
        c.step(x.row(t).transpose());
        s.step(x.row(t).transpose());
        worst = std::max({worst, c.estimate().orthonormality_error(), s.estimate().orthonormality_error()});
        steps += 2;
      }
    }
  }
  return {worst <= 1e-10, std::to_string(steps) + " steps, worst max|V^T V - I| = " + fmt("%.2e", worst)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  int cases = 0;
  for (Index n : {8, 16, 32}) {
    for (Index d : {1, 2, 3}) {
      GaussianStream rng(StreamSeed{static_cast<std::uint64_t>(500 + n + d)});
      const std::vector<double> all = {20.0, 12.0, 8.0};
      const std::vector<double> lambdas(all.begin(), all.begin() + d);
      const SpikeModel model(lambdas, random_frame(rng, n, d), 1.0);
      CovarianceAccumulator acc(n);
      for (int i = 0; i < 400; ++i) {
        acc.add(sample_observation(model, rng));
      }
      const SymmetricEigen oracle = top_d_eigenvectors(acc.normalized(), d);
      Tracker tracker(random_frame(rng, n, d), acc);
      for (int i = 0; i < 200; ++i) {
        tracker.iterate();
      }
      worst = std::max(worst, subspace_distance(tracker.estimate(), oracle.eigenvectors));
      ++cases;
    }
  }
  return {worst <= 1e-12, std::to_string(cases) + " frozen covariances, worst distance " + fmt("%.2e", worst)};
}

Outcome geometry_identities() {
  GaussianStream rng(StreamSeed{600});
  double worst_identity = 0.0;
  double worst_rotation = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 4 + trial % 13;
    const Index d = 1 + trial % std::min<Index>(n - 1, 5);
    const OrthonormalFrame w = random_frame(rng, n, d);
    const OrthonormalFrame q = random_frame(rng, n, d);
    const double l = subspace_distance(w, q);
    Eigen::JacobiSVD<Matrix> svd(w.basis().transpose() * q.basis());
    const double smin = svd.singularValues()(d - 1);
    worst_identity = std::max(worst_identity, std::abs(l - (1.0 - smin * smin)));

    const Matrix r = scpast::testing::random_orthogonal(rng, n);
    const Matrix od = scpast::testing::random_orthogonal(rng, d);
    const OrthonormalFrame rw(r * w.basis() * od);
    const OrthonormalFrame rq(r * q.basis());
    worst_rotation = std::max(worst_rotation, std::abs(subspace_distance(rw, rq) - l));
  }
  return {worst_identity <= 1e-10 && worst_rotation <= 1e-12,
          "100 pairs, |l - (1 - s_min^2)| <= " + fmt("%.2e", worst_identity) + ", rotation drift " +
              fmt("%.2e", worst_rotation)};
}

Outcome threshold_contract() {
  std::mt19937_64 engine(2024);
  std::uniform_real_distribution<double> xs(-10.0, 10.0);
  std::uniform_real_distribution<double> betas(0.0, 5.0);
  long violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = xs(engine);
    const double beta = i % 100 == 0 ? std::abs(x) : betas(engine);  // include the boundary |x| = beta
    for (ThresholdKind kind : {ThresholdKind::hard, ThresholdKind::soft}) {
      const double g = apply_threshold(x, beta, kind);
      if (std::abs(g - x) > beta || (std::abs(x) <= beta && g != 0.0)) {
        ++violations;
      }
    }
  }
  return {violations == 0, "1e5 draws x 2 rules, " + std::to_string(violations) + " violations"};
}

Outcome rate_check() {
  ExperimentConfig cfg = parse_config(
      "n = 64\nd = 1\nlambdas = 10\nsigma = 1\neigvec_source = random\neigvec_seed = 64\n"
      "mode = cpast\ngamma = 1\nt0 = 100\nT = 20000\n");
  cfg.seeds.clear();
  for (std::uint64_t s = 1; s <= 50; ++s) {
    cfg.seeds.push_back(s);
  }
  validate(cfg);
  const auto traces = run_experiment(cfg);
  std::vector<double> at2k;
  std::vector<double> at20k;
  for (const auto& trace : traces) {
    for (const auto& rec : trace.records) {
      if (rec.t == 2000) {
        at2k.push_back(rec.l);
      } else if (rec.t == 20000) {
        at20k.push_back(rec.l);
      }
    }
  }
  const double m2 = median(at2k);
  const double m20 = median(at20k);
  return {at2k.size() == 50 && at20k.size() == 50 && m20 <= m2 / 5.0,
          "median l(2000) = " + fmt("%.3e", m2) + ", l(20000) = " + fmt("%.3e", m20) + ", ratio " +
              fmt("%.2f", m2 / m20) + " (need >= 5)"};
}

Outcome sparse_advantage() {
  bool ok = true;
  std::string detail;
  for (const char* lambda : {"5", "30", "100"}) {
    ExperimentConfig cfg = parse_config(std::string("n = 1024\nd = 1\nlambdas = ") + lambda +
                                        "\nsupport_size = 16\nsupport_offset = 500\nrule = hard\na = 1.5\n"
                                        "t0 = 100\nT = 2000\nmode = both\n");
    cfg.seeds.clear();
    for (std::uint64_t s = 1; s <= 20; ++s) {
      cfg.seeds.push_back(s);
    }
    validate(cfg);
    const auto traces = run_experiment(cfg);
    std::vector<double> c;
    std::vector<double> s;
    for (const auto& trace : traces) {
      (trace.mode == TrackerMode::cpast ? c : s).push_back(trace.records.back().l);
    }
    const double mc = median(c);
    const double ms = median(s);
    ok = ok && ms <= mc;
    if (std::string(lambda) == "30") {
      ok = ok && ms <= 0.5 * mc;
    }
    detail += std::string(detail.empty() ? "" : "; ") + "lambda " + lambda + ": cpast " + fmt("%.3e", mc) +
              ", scpast " + fmt("%.3e", ms);
  }
  return {ok, detail};
}

Outcome support_recovery() {
  int covered = 0;
  {
    const Index n = 256;
    const SpikeModel model({20.0}, blocks(n, 1, 8), 1.0);
    InitConfig init;
    init.t0 = 500;
    init.gamma0 = min_schedule_constant(n, 500, 500);
    for (int seed = 0; seed < 100; ++seed) {
      GaussianStream rng(StreamSeed{static_cast<std::uint64_t>(10000 + seed)});
      const Tracker t = Tracker::init_sparse(sample_observations(model, rng, 500), init, hard({20.0}, 1.5));
      const auto& g = t.selected();
      bool all = true;
      for (Index k = 0; k < 8; ++k) {
        all = all && std::find(g.begin(), g.end(), k) != g.end();
      }
      covered += all ? 1 : 0;
    }
  }
  int clean = 0;
  {
    const Index n = 64;
    const SpikeModel model({20.0}, blocks(n, 1, 8), 1.0);
    InitConfig init;
    init.t0 = 100;
    init.gamma0 = min_schedule_constant(n, 500, 100);
    for (int seed = 0; seed < 50; ++seed) {
      GaussianStream rng(StreamSeed{static_cast<std::uint64_t>(20000 + seed)});
      const Matrix x = sample_observations(model, rng, 500);
      Tracker t = Tracker::init_sparse(x.topRows(100), init, hard({20.0}, 1.5));
      for (Index s = 100; s < 500; ++s) {
        t.step(x.row(s).transpose());
      }
      clean += t.estimate().basis().bottomRows(n - 8).isZero(0.0) ? 1 : 0;
    }
  }
  return {covered >= 95 && clean >= 45, "G contains the support in " + std::to_string(covered) +
                                            "/100 seeds; off-support zero at t=500 in " +
                                            std::to_string(clean) + "/50 seeds"};
}

Outcome wavelet_suite() {
  GaussianStream rng(StreamSeed{800});
  double recon = 0.0;
  double parseval = 0.0;
  double inner = 0.0;
  for (wavelet::Family f : {wavelet::Family::haar, wavelet::Family::symmlet8}) {
    for (Index n = 64; n <= 1024; n *= 2) {
      for (int levels = 1; levels <= 5; ++levels) {
        const wavelet::WaveletFilter w(f, levels);
        const Vector x = gaussian_vector(rng, n);
        const Vector y = gaussian_vector(rng, n);
        const Vector cx = wavelet::dwt(x, w);
        const Vector cy = wavelet::dwt(y, w);
        recon = std::max(recon, (wavelet::idwt(cx, w) - x).cwiseAbs().maxCoeff());
        parseval = std::max(parseval, std::abs(cx.norm() - x.norm()));
        inner = std::max(inner, std::abs(cx.dot(cy) - x.dot(y)));
      }
    }
  }
  return {recon <= 1e-10 && parseval <= 1e-10 && inner <= 1e-10,
          "reconstruction " + fmt("%.1e", recon) + ", Parseval " + fmt("%.1e", parseval) +
              ", inner product " + fmt("%.1e", inner)};
}

Outcome zero_threshold_equivalence() {
  double worst = 0.0;
  long steps = 0;
  for (Index n : {16, 64}) {
    for (Index d : {1, 3}) {
      GaussianStream rng(StreamSeed{static_cast<std::uint64_t>(900 + n + d)});
      const std::vector<double> all = {15.0, 9.0, 5.0};
      const std::vector<double> lambdas(all.begin(), all.begin() + d);
      const SpikeModel model(lambdas, random_frame(rng, n, d), 1.0);
      const Matrix x = sample_observations(model, rng, 1000);
      Tracker c = Tracker::init_svd(x.topRows(50), d);
      Tracker s(c.estimate(), c.accumulator(), hard(lambdas, 0.0));
      for (Index t = 50; t < x.rows(); ++t) {
        c.step(x.row(t).transpose());
        s.step(x.row(t).transpose());
        worst = std::max(worst, (c.estimate().basis() - s.estimate().basis()).cwiseAbs().maxCoeff());
        ++steps;
      }
    }
  }
  return {worst <= 1e-14, std::to_string(steps) + " paired steps, worst entry gap " + fmt("%.1e", worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SCPAST_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string meta_without_clock(const fs::path& p) {
  nlohmann::json j = nlohmann::json::parse(slurp(p));
  j.erase("wall_clock_seconds");
  return j.dump();
}

Outcome end_to_end_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("scpast_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "sim.cfg") << "n = 64\nd = 1\nlambdas = 30\neigvec_source = wavelet\n"
                                      "wavelet_function = three_peak\nT = 600\nt0 = 100\nseeds = 9\n";
  }
  const std::string cfg = (dir / "sim.cfg").string();
  int failures = 0;
  for (const char* run : {"1", "2"}) {
    const std::string r(run);
    failures += cli("simulate --config " + cfg + " --output " + (dir / ("x" + r + ".csv")).string()) != 0;
    failures += cli("track --config " + cfg + " --output " + (dir / ("t" + r + ".csv")).string()) != 0;
    failures += cli("track --config " + cfg + " --input " + (dir / "x1.csv").string() + " --output " +
                    (dir / ("i" + r + ".csv")).string()) != 0;
  }
  std::vector<std::string> differ;
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"x1.csv", "x2.csv"}, {"t1.csv", "t2.csv"}, {"i1.csv", "i2.csv"},
      {"i1.cpast.estimate.csv", "i2.cpast.estimate.csv"}, {"i1.scpast.estimate.csv", "i2.scpast.estimate.csv"}};
  for (const auto& [a, b] : pairs) {
    const std::string sa = slurp(dir / a);
    if (sa.empty() || sa != slurp(dir / b)) {
      differ.push_back(a);
    }
  }
  for (const char* stem : {"x", "t", "i"}) {
    const std::string s(stem);
    if (meta_without_clock(dir / (s + "1.meta.json")) != meta_without_clock(dir / (s + "2.meta.json"))) {
      differ.push_back(s + "1.meta.json");
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  std::string detail = "simulate + track (simulated and ingested), 2 runs: ";
  if (failures == 0 && differ.empty()) {
    detail += "all CSV bytes identical, metadata identical apart from wall clock";
  } else {
    detail += std::to_string(failures) + " command failures";
    for (const auto& d : differ) {
      detail += ", differs: " + d;
    }
  }
  return {failures == 0 && differ.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "orthonormality suite", 10.0, orthonormality_suite},
      {2, "orthogonal iteration matches the eigensolver", 5.0, oracle_equivalence},
      {3, "geometry identities", 5.0, geometry_identities},
      {4, "threshold contract", 1.0, threshold_contract},
      {5, "CPAST rate check", 180.0, rate_check},
      {6, "sparse advantage", 600.0, sparse_advantage},
      {7, "support recovery", 180.0, support_recovery},
      {8, "wavelet suite", 5.0, wavelet_suite},
      {9, "SCPAST with a = 0 equals CPAST", 10.0, zero_threshold_equivalence},
      {10, "end-to-end determinism", 30.0, end_to_end_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = out.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  %2d. %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                out.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", too slow");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
