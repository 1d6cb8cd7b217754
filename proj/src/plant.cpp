#include "danc/plant.hpp"

#include "danc/error.hpp"
#include "danc/kernels.hpp"

namespace danc {

Plant::Plant(const PathSet& paths, std::size_t filter_taps, PlantMode mode,
             std::vector<double> noise_variance, std::uint64_t noise_seed)
    : mode_(mode), path_taps_(paths.taps()), x_(filter_taps) {
  const std::size_t J = paths.nodes();
  if (J == 0 || filter_taps == 0) throw Error(ErrorCode::DimensionMismatch, "empty plant");
  if (!noise_variance.empty() && noise_variance.size() != J) {
    throw Error(ErrorCode::DimensionMismatch, "one noise variance per mic expected");
  }
  for (const auto& p : paths.primary) primary_.emplace_back(p);
  if (mode == PlantMode::slow_variation) {
    true_bank_ = std::make_unique<FilteredRefBank>(paths.secondary, filter_taps, all_pairs(J));
  } else {
    for (std::size_t j = 0; j < J; ++j)
      for (std::size_t k = 0; k < J; ++k) secondary_.push_back(paths.secondary[j][k].coeffs);
  }
  // Each mic gets its own stream so its noise does not depend on J.
  for (std::size_t j = 0; j < noise_variance.size(); ++j) {
    noise_.emplace_back(noise_variance[j], noise_seed + 0x9E3779B97F4A7C15ULL * (j + 1));
  }
  d_.assign(J, 0.0);
  v_.assign(J, 0.0);
}

void Plant::advance(double x) {
  x_.push(x);
  for (std::size_t j = 0; j < d_.size(); ++j) d_[j] = primary_[j].step(x);
  if (true_bank_) true_bank_->step(x);
  for (std::size_t j = 0; j < noise_.size(); ++j) v_[j] = noise_[j].next();
}

void Plant::error(const GlobalFilter& w, std::span<const double> y, OutputHistory& history,
                  std::span<double> e, bool noise_on) const {
  const std::size_t J = nodes();
  if (w.nodes() != J || w.taps() != filter_taps() || e.size() != J) {
    throw Error(ErrorCode::DimensionMismatch, "controller dimensions do not match the plant");
  }
  if (mode_ == PlantMode::slow_variation) {
    for (std::size_t j = 0; j < J; ++j) {
      double c = 0.0;
      for (std::size_t k = 0; k < J; ++k) c += kernels::dot(w.filter(k), true_bank_->window(j, k));
      e[j] = d_[j] + c;
    }
  } else {
    if (y.size() != J) throw Error(ErrorCode::DimensionMismatch, "one output per speaker expected");
    history.push(y);
    for (std::size_t j = 0; j < J; ++j) {
      double c = 0.0;
      for (std::size_t k = 0; k < J; ++k) c += kernels::dot(secondary_[j * J + k], history.window(k));
      e[j] = d_[j] + c;
    }
  }
  if (noise_on) {
    for (std::size_t j = 0; j < J; ++j) e[j] += v_[j];
  }
}

PlantOutput plant_step(Plant& plant, OutputHistory& history, const GlobalFilter& w, double x,
                       bool noise_on) {
  plant.advance(x);
  const std::size_t J = plant.nodes();
  std::vector<double> y(J);
  for (std::size_t j = 0; j < J; ++j) y[j] = kernels::dot(w.filter(j), plant.reference_window());
  PlantOutput out{std::vector<double>(J), std::vector<double>(plant.disturbance().begin(),
                                                              plant.disturbance().end())};
  plant.error(w, y, history, out.e, noise_on);
  return out;
}

}  // namespace danc
