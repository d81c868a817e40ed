// Times both sumset kernels over a grid of (n, |A|) to locate the crossover
// behind kernels::kConvolutionFactor.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "steinhaus/sumset.hpp"

using namespace steinhaus;

namespace {

CyclicSet random_set(std::uint32_t n, std::size_t size, std::mt19937_64& rng) {
  CyclicSet s(n);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  while (s.size() < size) s.insert(pick(rng));
  return s;
}

template <class F>
double time_us(F&& f, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::micro>(stop - start).count() / reps;
}

}  // namespace

int main() {
  std::mt19937_64 rng(1);
  std::printf("%8s %8s %12s %12s %10s\n", "n", "|A|", "shift_or_us", "conv_us", "|A|/log2n");
  for (std::uint32_t n : {256u, 4096u, 65536u, 1u << 18}) {
    for (double frac : {0.01, 0.05, 0.2, 0.5}) {
      const auto size = std::max<std::size_t>(1, static_cast<std::size_t>(frac * n));
      const CyclicSet a = random_set(n, size, rng), b = random_set(n, size, rng);
      const int reps = n <= 4096 ? 20 : 2;
      const double t_or = time_us([&] { (void)kernels::shift_or(a, b); }, reps);
      const double t_conv = time_us([&] { (void)kernels::convolution(a, b); }, reps);
      std::printf("%8u %8zu %12.1f %12.1f %10.1f\n", n, size, t_or, t_conv, size / std::log2(n));
    }
  }
}
