#include "scpast/kernels.hpp"

#include <omp.h>

namespace scpast::kernels::omp {

void rank_one_update(Matrix& s, double gamma, const Vector& x) {
  const Index n = x.size();
  double* data = s.data();
  const double* xs = x.data();
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) {
    double* col = data + j * n;
    const double xj = xs[j];
#pragma omp simd
    for (Index i = 0; i < n; ++i) {
      col[i] = gamma * col[i] + xs[i] * xj;
    }
  }
}

void symmetric_times_frame(const Matrix& s, const Matrix& v, Matrix& out) {
  const Index n = s.rows();
  const Index d = v.cols();
  out.resize(n, d);
  const double* sd = s.data();
  // Row i of a symmetric s is its column i, which is contiguous in column-major storage.
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const double* row = sd + i * n;
    for (Index j = 0; j < d; ++j) {
      const double* vj = v.data() + j * n;
      double acc = 0.0;
#pragma omp simd reduction(+ : acc)
      for (Index k = 0; k < n; ++k) {
        acc += row[k] * vj[k];
      }
      out(i, j) = acc;
    }
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace scpast::kernels::omp
