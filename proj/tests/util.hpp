#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "danc/acoustics.hpp"

namespace testutil {

inline std::vector<double> randn(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

inline danc::ImpulseResponse random_ir(std::mt19937_64& rng, std::size_t taps, double scale = 1.0) {
  return {randn(rng, taps, scale), 1.0};
}

// Straight textbook convolution, no shared code with the library.
inline std::vector<double> naive_conv(std::span<const double> x, std::span<const double> h) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n)
    for (std::size_t i = 0; i < h.size() && i <= n; ++i) y[n] += h[i] * x[n - i];
  return y;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testutil
