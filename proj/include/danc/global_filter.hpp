#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace danc {

/// Stacked control filters w = col{w_1, ..., w_J}, each I taps.
class GlobalFilter {
 public:
  GlobalFilter() = default;
  GlobalFilter(std::size_t nodes, std::size_t taps)
      : nodes_(nodes), taps_(taps), data_(nodes * taps, 0.0) {}

  std::size_t nodes() const { return nodes_; }
  std::size_t taps() const { return taps_; }

  std::span<double> filter(std::size_t j) { return {data_.data() + j * taps_, taps_}; }
  std::span<const double> filter(std::size_t j) const { return {data_.data() + j * taps_, taps_}; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }
  bool finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
  }

  bool operator==(const GlobalFilter&) const = default;

 private:
  std::size_t nodes_ = 0;
  std::size_t taps_ = 0;
  std::vector<double> data_;
};

}  // namespace danc
