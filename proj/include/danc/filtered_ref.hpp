#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "danc/acoustics.hpp"
#include "danc/kernels.hpp"
#include "danc/network.hpp"

namespace danc {

/// Which (mic j, speaker k) filtered references a bank maintains.
using PairMask = std::vector<std::vector<bool>>;

PairMask all_pairs(std::size_t nodes);
PairMask diagonal_pairs(std::size_t nodes);
/// (j, p) for every p in N_j.
PairMask neighborhood_pairs(const Topology& topo);

/// Filtered-x regressors: for each supported pair, the reference x passed
/// through the path model h[j][k], kept as an I-long newest-first window
/// together with its squared norm.
class FilteredRefBank {
 public:
  FilteredRefBank() = default;
  FilteredRefBank(const std::vector<std::vector<ImpulseResponse>>& paths,
                  std::size_t filter_taps, PairMask support);

  /// Advances every window by one sample of x. Squared norms are recomputed
  /// directly from the windows.
  void step(double x, OpTally* filtering = nullptr, OpTally* normalization = nullptr);

  bool has(std::size_t j, std::size_t k) const { return index_[j * nodes_ + k] >= 0; }
  std::span<const double> window(std::size_t j, std::size_t k) const {
    return lines_[slot(j, k)].window();
  }
  double norm2(std::size_t j, std::size_t k) const { return norms_[slot(j, k)]; }

  std::size_t nodes() const { return nodes_; }
  std::size_t filter_taps() const { return filter_taps_; }
  std::size_t path_taps() const { return reference_.size(); }
  std::size_t pairs() const { return lines_.size(); }

 private:
  std::size_t slot(std::size_t j, std::size_t k) const;

  std::size_t nodes_ = 0;
  std::size_t filter_taps_ = 0;
  DelayLine reference_;
  std::vector<long> index_;
  std::vector<std::vector<double>> coeffs_;
  std::vector<DelayLine> lines_;
  std::vector<double> norms_;
};

}  // namespace danc
