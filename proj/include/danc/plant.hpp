#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "danc/acoustics.hpp"
#include "danc/filtered_ref.hpp"
#include "danc/global_filter.hpp"

namespace danc {

/// How loudspeaker output reaches the error microphones.
///  slow_variation: c(n) = F(n) w(n), i.e. the current filters are taken to have
///                  produced the whole output history (the usual slowly-varying
///                  filter assumption);
///  causal:         c_j(n) = sum_k h_jk^T [y_k(n) .. y_k(n-H+1)] with each y_k
///                  produced by the filter in force at that sample.
enum class PlantMode { slow_variation, causal };

/// Past loudspeaker outputs of one controller, needed by the causal plant.
class OutputHistory {
 public:
  OutputHistory() = default;
  OutputHistory(std::size_t nodes, std::size_t path_taps)
      : lines_(nodes, DelayLine(path_taps)) {}

  void push(std::span<const double> y) {
    for (std::size_t k = 0; k < lines_.size(); ++k) lines_[k].push(y[k]);
  }
  std::span<const double> window(std::size_t k) const { return lines_[k].window(); }

 private:
  std::vector<DelayLine> lines_;
};

/// Acoustic plant driven by the reference x: primary disturbance d, true
/// secondary paths and per-mic sensor noise v, so that e = d + c + v.
class Plant {
 public:
  /// noise_variance holds one variance per mic; empty disables sensor noise.
  Plant(const PathSet& paths, std::size_t filter_taps, PlantMode mode,
        std::vector<double> noise_variance = {}, std::uint64_t noise_seed = 0);

  /// Consumes x(n): updates the reference window, d(n), the true-path
  /// regressors and draws v(n).
  void advance(double x);

  /// e(n) for one controller whose loudspeaker outputs at n are y.
  void error(const GlobalFilter& w, std::span<const double> y, OutputHistory& history,
             std::span<double> e, bool noise_on = true) const;

  std::span<const double> disturbance() const { return d_; }
  std::span<const double> noise() const { return v_; }
  std::span<const double> reference_window() const { return x_.window(); }
  PlantMode mode() const { return mode_; }
  std::size_t nodes() const { return d_.size(); }
  std::size_t filter_taps() const { return x_.size(); }
  std::size_t path_taps() const { return path_taps_; }

  /// Regressors through the true secondary paths (slow_variation mode only).
  const FilteredRefBank* true_bank() const { return true_bank_.get(); }
  OutputHistory make_history() const { return OutputHistory(nodes(), path_taps_); }

 private:
  PlantMode mode_;
  std::size_t path_taps_;
  DelayLine x_;
  std::vector<Convolver> primary_;
  std::vector<std::vector<double>> secondary_;
  std::unique_ptr<FilteredRefBank> true_bank_;
  std::vector<NoiseSource> noise_;
  std::vector<double> d_;
  std::vector<double> v_;
};

struct PlantOutput {
  std::vector<double> e;
  std::vector<double> d;
};

/// One full plant sample for a single controller: advance the plant by x(n),
/// form y_j = w_j^T [x(n) .. x(n-I+1)] and return e(n) and the noiseless d(n).
PlantOutput plant_step(Plant& plant, OutputHistory& history, const GlobalFilter& w, double x,
                       bool noise_on = true);

}  // namespace danc
