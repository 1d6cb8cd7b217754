#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "danc/acoustics.hpp"
#include "danc/global_filter.hpp"

namespace danc {

/// Least-squares optimal global control filter for one reference record.
struct WienerSolution {
  GlobalFilter w_opt;
  std::vector<double> residual_power;     // mean e_j^2 at w_opt, per mic
  std::vector<double> disturbance_power;  // mean d_j^2, per mic
  double normal_residual = 0.0;           // ||R w + r|| / ||r||
  bool regularized = false;               // Cholesky failed and a ridge was added
};

/// Minimizes sum_{skip <= n < T} ||d(n) + F(n) w||^2 over the stacked filter,
/// where d is x through the primary paths and F(n) holds the I-sample windows
/// of x through the true secondary paths. Samples before x starts are zero.
WienerSolution wiener_oracle(const PathSet& paths, std::span<const double> x,
                             std::size_t filter_taps, std::size_t skip = 0);

/// Mean e_j^2 over the same samples for an arbitrary global filter.
std::vector<double> ls_residual_power(const PathSet& paths, std::span<const double> x,
                                      const GlobalFilter& w, std::size_t skip = 0);

}  // namespace danc
