#include "danc/filtered_ref.hpp"

#include <sstream>

#include "danc/error.hpp"

namespace danc {

PairMask all_pairs(std::size_t nodes) {
  return PairMask(nodes, std::vector<bool>(nodes, true));
}

PairMask diagonal_pairs(std::size_t nodes) {
  PairMask mask(nodes, std::vector<bool>(nodes, false));
  for (std::size_t j = 0; j < nodes; ++j) mask[j][j] = true;
  return mask;
}

PairMask neighborhood_pairs(const Topology& topo) {
  PairMask mask(topo.nodes(), std::vector<bool>(topo.nodes(), false));
  for (std::size_t j = 0; j < topo.nodes(); ++j) {
    for (std::size_t p : topo.neighborhood(j)) mask[j][p] = true;
  }
  return mask;
}

FilteredRefBank::FilteredRefBank(const std::vector<std::vector<ImpulseResponse>>& paths,
                                 std::size_t filter_taps, PairMask support)
    : nodes_(paths.size()), filter_taps_(filter_taps), index_(nodes_ * nodes_, -1) {
  if (support.size() != nodes_ || filter_taps == 0) {
    throw Error(ErrorCode::DimensionMismatch, "bank support must be J x J and I > 0");
  }
  std::size_t taps = 0;
  for (std::size_t j = 0; j < nodes_; ++j) {
    if (paths[j].size() != nodes_ || support[j].size() != nodes_) {
      throw Error(ErrorCode::DimensionMismatch, "path model must be J x J");
    }
    for (std::size_t k = 0; k < nodes_; ++k) {
      if (!support[j][k]) continue;
      const auto& h = paths[j][k].coeffs;
      if (taps == 0) taps = h.size();
      if (h.size() != taps || taps == 0) {
        throw Error(ErrorCode::DimensionMismatch, "all path models must share one length");
      }
      index_[j * nodes_ + k] = static_cast<long>(lines_.size());
      coeffs_.push_back(h);
      lines_.emplace_back(filter_taps);
    }
  }
  reference_ = DelayLine(taps == 0 ? 1 : taps);
  norms_.assign(lines_.size(), 0.0);
}

std::size_t FilteredRefBank::slot(std::size_t j, std::size_t k) const {
  const long s = index_[j * nodes_ + k];
  if (s < 0) {
    std::ostringstream os;
    os << "bank holds no filtered reference for pair (" << j + 1 << ", " << k + 1 << ")";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return static_cast<std::size_t>(s);
}

void FilteredRefBank::step(double x, OpTally* filtering, OpTally* normalization) {
  reference_.push(x);
  const auto xw = reference_.window();
  for (std::size_t s = 0; s < lines_.size(); ++s) {
    lines_[s].push(kernels::dot(coeffs_[s], xw, filtering));
    norms_[s] = kernels::sum_sq(lines_[s].window(), normalization);
  }
}

}  // namespace danc
