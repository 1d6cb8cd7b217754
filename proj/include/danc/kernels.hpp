#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace danc {

/// Running tally of floating-point multiplications and additions.
/// Divisions are tallied as multiplications, subtractions as additions.
struct OpTally {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;

  OpTally& operator+=(const OpTally& o) {
    mul += o.mul;
    add += o.add;
    return *this;
  }
};

// Small vector kernels shared by every filter update. Each takes an optional
// tally and bumps it by exactly the arithmetic it performs.
namespace kernels {

inline void count(OpTally* t, std::uint64_t mul, std::uint64_t add) {
  if (t != nullptr) {
    t->mul += mul;
    t->add += add;
  }
}

/// a . b with four partial sums: n mults, n-1 adds.
inline double dot(std::span<const double> a, std::span<const double> b,
                  OpTally* t = nullptr) {
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  count(t, n, n - 1);
  if (n < 4) {
    double acc = a[0] * b[0];
    for (std::size_t i = 1; i < n; ++i) acc += a[i] * b[i];
    return acc;
  }
  double s0 = a[0] * b[0], s1 = a[1] * b[1], s2 = a[2] * b[2], s3 = a[3] * b[3];
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

inline double sum_sq(std::span<const double> a, OpTally* t = nullptr) {
  return dot(a, a, t);
}

/// y += alpha * x: n mults, n adds.
inline void axpy(double alpha, std::span<const double> x, std::span<double> y,
                 OpTally* t = nullptr) {
  const std::size_t n = x.size();
  count(t, n, n);
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

/// y = alpha * x: n mults.
inline void scale(double alpha, std::span<const double> x, std::span<double> y,
                  OpTally* t = nullptr) {
  const std::size_t n = x.size();
  count(t, n, 0);
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

}  // namespace kernels
}  // namespace danc
