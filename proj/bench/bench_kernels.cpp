// Serial reference vs OpenMP kernels, plus a full tracker step.
//
//   bench_kernels [repetitions]
//
// Set OMP_NUM_THREADS to vary the parallel width.

#include "scpast/kernels.hpp"
#include "scpast/model.hpp"
#include "scpast/trackers.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

namespace {

double time_ms(int reps, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    body();
  }
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace scpast;
  const int reps = argc > 1 ? std::atoi(argv[1]) : 20;
  std::printf("threads: %d, repetitions: %d\n", kernels::omp::max_threads(), reps);
  std::printf("%-28s %6s %3s %12s %12s %8s\n", "kernel", "n", "d", "serial ms", "omp ms", "speedup");

  GaussianStream rng(StreamSeed{1});
  for (Index n : {256, 512, 1024, 2048}) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) {
      x(i) = rng.next();
    }
    Matrix s = Matrix::Zero(n, n);
    kernels::serial::rank_one_update(s, 1.0, x);
    const double t_serial = time_ms(reps, [&] { kernels::serial::rank_one_update(s, 0.99, x); });
    const double t_omp = time_ms(reps, [&] { kernels::omp::rank_one_update(s, 0.99, x); });
    std::printf("%-28s %6ld %3d %12.3f %12.3f %8.2f\n", "rank_one_update", static_cast<long>(n), 0,
                t_serial, t_omp, t_serial / t_omp);

    for (Index d : {1, 4}) {
      Matrix v = Matrix::Random(n, d);
      Matrix out;
      const double m_serial = time_ms(reps, [&] { kernels::serial::symmetric_times_frame(s, v, out); });
      const double m_omp = time_ms(reps, [&] { kernels::omp::symmetric_times_frame(s, v, out); });
      std::printf("%-28s %6ld %3ld %12.3f %12.3f %8.2f\n", "symmetric_times_frame",
                  static_cast<long>(n), static_cast<long>(d), m_serial, m_omp, m_serial / m_omp);
    }

    Matrix warm(20, n);
    for (Index t = 0; t < 20; ++t) {
      for (Index i = 0; i < n; ++i) {
        warm(t, i) = rng.next();
      }
    }
    Tracker tracker(symmetric_orthogonalize(Matrix::Random(n, 1)), CovarianceAccumulator(n));
    for (Index t = 0; t < warm.rows(); ++t) {
      tracker.step(warm.row(t).transpose());
    }
    const double step_exact = time_ms(reps, [&] { tracker.step(x); });
    tracker.set_fast_multiply(true);
    const double step_fast = time_ms(reps, [&] { tracker.step(x); });
    std::printf("%-28s %6ld %3d %12s %12.3f\n", "cpast step (exact)", static_cast<long>(n), 1, "-",
                step_exact);
    std::printf("%-28s %6ld %3d %12s %12.3f\n", "cpast step (fast multiply)", static_cast<long>(n), 1,
                "-", step_fast);
  }
  return 0;
}
