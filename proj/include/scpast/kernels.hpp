#pragma once

#include "scpast/linalg.hpp"

// The two O(n^2) inner loops of a tracker step. Each kernel exists twice:
// `serial` is the plain-loop reference kept for testing and benchmarks,
// `omp` is the OpenMP version the library calls. Every output entry of the
// OpenMP kernels is produced by one thread with a fixed loop order, so
// results do not depend on the thread count.
namespace scpast::kernels {

namespace serial {

/// s <- gamma * s + x x^T over the full n x n matrix.
void rank_one_update(Matrix& s, double gamma, const Vector& x);

/// out <- s * v for symmetric s (n x n) and v (n x d).
void symmetric_times_frame(const Matrix& s, const Matrix& v, Matrix& out);

}  // namespace serial

namespace omp {

void rank_one_update(Matrix& s, double gamma, const Vector& x);

void symmetric_times_frame(const Matrix& s, const Matrix& v, Matrix& out);

/// Threads the OpenMP kernels will use.
int max_threads();

}  // namespace omp

}  // namespace scpast::kernels
