#include "mqm/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace mqm {

namespace {

template <typename T> T pairwise_impl(std::span<const T> v) {
  const std::size_t n = v.size();
  if (n == 0)
    return T{};
  if (n <= 8) {
    T s = v[0];
    for (std::size_t i = 1; i < n; ++i)
      s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_impl(v.first(half)) + pairwise_impl(v.subspan(half));
}

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlx[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                            0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double kGlw[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                            0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

template <typename T>
T gl_impl(const std::function<T(double)> &f, double a, double b, int panels) {
  if (panels < 1)
    panels = 1;
  const double h = (b - a) / panels;
  std::vector<T> partial(static_cast<std::size_t>(panels));
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    T s{};
    for (int i = 0; i < 6; ++i) {
      const double dx = 0.5 * h * kGlx[i];
      s += kGlw[i] * (f(mid + dx) + f(mid - dx));
    }
    partial[static_cast<std::size_t>(p)] = s * (0.5 * h);
  }
  return pairwise_impl(std::span<const T>(partial));
}

} // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_impl(v); }
Complex pairwise_sum(std::span<const Complex> v) { return pairwise_impl(v); }

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1)
    hw = 1;
  if (const char *env = std::getenv("MAXWELLQM_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1)
        hw = std::min(hw, cap);
    } catch (...) {
      // unparsable cap is ignored
    }
  }
  return hw;
}

void parallel_chunks(std::size_t count, const std::function<void(std::size_t, std::size_t)> &fn) {
  if (count == 0)
    return;
  const int workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  // Fixed chunking: 4 chunks per worker keeps the split independent of timing.
  const std::size_t chunks = std::min<std::size_t>(count, static_cast<std::size_t>(workers) * 4);
  const std::size_t step = (count + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        const std::size_t begin = c * step;
        if (begin >= count)
          return;
        fn(begin, std::min(begin + step, count));
      }
    });
  }
  for (auto &t : pool)
    t.join();
}

double gauss_legendre(const std::function<double(double)> &f, double a, double b, int panels) {
  return gl_impl<double>(f, a, b, panels);
}

Complex gauss_legendre(const std::function<Complex(double)> &f, double a, double b, int panels) {
  return gl_impl<Complex>(f, a, b, panels);
}

} // namespace mqm
