#include "scpast/kernels.hpp"

namespace scpast::kernels::serial {

void rank_one_update(Matrix& s, double gamma, const Vector& x) {
  const Index n = x.size();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      s(i, j) = gamma * s(i, j) + x(i) * x(j);
    }
  }
}

void symmetric_times_frame(const Matrix& s, const Matrix& v, Matrix& out) {
  const Index n = s.rows();
  const Index d = v.cols();
  out.resize(n, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < n; ++i) {
      double acc = 0.0;
      for (Index k = 0; k < n; ++k) {
        acc += s(i, k) * v(k, j);
      }
      out(i, j) = acc;
    }
  }
}

}  // namespace scpast::kernels::serial
