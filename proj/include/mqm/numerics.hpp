#pragma once
#include "mqm/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mqm {

//! Pairwise (cascade) summation: deterministic and accurate for the long
//! reductions used by inner products and norms.
double pairwise_sum(std::span<const double> v);
Complex pairwise_sum(std::span<const Complex> v);

//! Number of worker threads: min(hardware, MAXWELLQM_THREADS if set). At least 1.
int thread_budget();

//! Run fn(begin, end) over [0, count) split into contiguous chunks, possibly
//! in parallel. Chunk boundaries depend only on `count`, so per-chunk results
//! are reproducible regardless of the number of threads.
void parallel_chunks(std::size_t count, const std::function<void(std::size_t, std::size_t)> &fn);

//! Composite Gauss-Legendre quadrature of f over [a, b] with `panels`
//! equal panels of a fixed 12-point rule.
double gauss_legendre(const std::function<double(double)> &f, double a, double b, int panels);
Complex gauss_legendre(const std::function<Complex(double)> &f, double a, double b, int panels);

} // namespace mqm
