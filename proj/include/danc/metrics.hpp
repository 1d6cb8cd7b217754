#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "danc/global_filter.hpp"

namespace danc {

/// Per-sample residual and disturbance power, summed over mics (and runs).
struct PowerTrace {
  std::vector<double> residual;     // sum e_j^2(n)
  std::vector<double> disturbance;  // sum d_j^2(n)

  void resize(std::size_t n) {
    residual.assign(n, 0.0);
    disturbance.assign(n, 0.0);
  }
  std::size_t size() const { return residual.size(); }
  PowerTrace& operator+=(const PowerTrace& o);
};

/// Normalized residual noise in dB. The power ratio is formed from powers
/// already summed over runs; a centred moving average of `window` samples
/// (1 = none) is applied to the ratio before the log. Samples with zero
/// disturbance power come back as NaN.
std::vector<double> normalized_residual_db(const PowerTrace& power, std::size_t window = 1);

/// Convenience form over explicit per-run signals: e_runs[r][n][j], d_runs[r][n][j].
std::vector<double> residual_trace(
    const std::vector<std::vector<std::vector<double>>>& e_runs,
    const std::vector<std::vector<std::vector<double>>>& d_runs, std::size_t window = 1);

/// Mean of the finite entries in the final `fraction` of a dB trace.
double steady_state_db(std::span<const double> tau_db, double fraction = 0.1);

/// max_{j,k} ||w_j - w_k|| / mean_j ||w_j||.
double consensus_spread(const GlobalFilter& w);

/// ||w - ref|| / ||ref|| over the stacked filter; throws ZeroReference.
double relative_distance(const GlobalFilter& w, const GlobalFilter& ref);

struct FilterDiagnostics {
  std::size_t iteration = 0;
  double consensus_spread = 0.0;
  double distance = 0.0;
};

/// Spread and distance-to-reference for each (iteration, filter) snapshot.
std::vector<FilterDiagnostics> filter_metrics(
    const std::vector<std::pair<std::size_t, GlobalFilter>>& snapshots, const GlobalFilter& ref);

}  // namespace danc
