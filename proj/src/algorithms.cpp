#include "danc/algorithms.hpp"

#include <algorithm>
#include <cctype>

#include "danc/error.hpp"

namespace danc {

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::cfxlms: return "cfxlms";
    case AlgorithmKind::dcfxlms: return "dcfxlms";
    case AlgorithmKind::mdfxlms: return "mdfxlms";
    case AlgorithmKind::bdfxlms_bc: return "bdfxlms_bc";
  }
  return "unknown";
}

std::string label(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::cfxlms: return "CFxLMS";
    case AlgorithmKind::dcfxlms: return "DCFxLMS";
    case AlgorithmKind::mdfxlms: return "MDFxLMS";
    case AlgorithmKind::bdfxlms_bc: return "BDFxLMS-BC";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(const std::string& name) {
  std::string n;
  for (char ch : name) n += (ch == '-') ? '_' : static_cast<char>(std::tolower(ch));
  if (n == "cfxlms" || n == "cf") return AlgorithmKind::cfxlms;
  if (n == "dcfxlms" || n == "dc") return AlgorithmKind::dcfxlms;
  if (n == "mdfxlms" || n == "md") return AlgorithmKind::mdfxlms;
  if (n == "bdfxlms_bc" || n == "bdfxlms" || n == "bd") return AlgorithmKind::bdfxlms_bc;
  throw Error(ErrorCode::ConfigError, "unknown algorithm '" + name + "'");
}

void cfxlms_step(GlobalFilter& w, const FilteredRefBank& bank, std::span<const double> e,
                 double mu, CentralNorm norm, OpTally* tally) {
  const std::size_t J = w.nodes();
  if (bank.nodes() != J || e.size() != J || bank.filter_taps() != w.taps()) {
    throw Error(ErrorCode::DimensionMismatch, "cfxlms_step dimensions disagree");
  }
  std::vector<double> mu_e(J);
  for (std::size_t j = 0; j < J; ++j) mu_e[j] = mu * e[j];
  kernels::count(tally, J, 0);

  if (norm == CentralNorm::block) {
    for (std::size_t k = 0; k < J; ++k) {
      for (std::size_t j = 0; j < J; ++j) {
        const double coef = mu_e[j] / (bank.norm2(j, k) + kNormDelta);
        kernels::count(tally, 1, 1);
        kernels::axpy(-coef, bank.window(j, k), w.filter(k), tally);
      }
    }
    return;
  }

  double total = 0.0;
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t k = 0; k < J; ++k) total += bank.norm2(j, k);
  const double denom = total + kNormDelta;
  std::vector<double> coef(J);
  for (std::size_t j = 0; j < J; ++j) coef[j] = mu_e[j] / denom;
  kernels::count(tally, J, J * J);
  for (std::size_t k = 0; k < J; ++k) {
    for (std::size_t j = 0; j < J; ++j) kernels::axpy(-coef[j], bank.window(j, k), w.filter(k), tally);
  }
}

void dcfxlms_step(std::span<double> w_j, std::span<const double> f_jj, double norm2, double e_j,
                  double mu, OpTally* tally) {
  if (w_j.size() != f_jj.size()) {
    throw Error(ErrorCode::DimensionMismatch, "filter and regressor lengths differ");
  }
  const double coef = (mu * e_j) / (norm2 + kNormDelta);
  kernels::count(tally, 2, 1);
  kernels::axpy(-coef, f_jj, w_j, tally);
}

void mdfxlms_step(GlobalFilter& w, GlobalFilter& scratch, const FilteredRefBank& bank,
                  std::span<const double> e, double mu, const Topology& topo,
                  const CombinationMatrix& c, OpTally* adaptation, OpTally* combination) {
  const std::size_t J = w.nodes();
  if (topo.nodes() != J || c.nodes() != J || e.size() != J || bank.nodes() != J) {
    throw Error(ErrorCode::DimensionMismatch, "mdfxlms_step dimensions disagree");
  }
  scratch = w;
  for (std::size_t j = 0; j < J; ++j) {
    dcfxlms_step(scratch.filter(j), bank.window(j, j), bank.norm2(j, j), e[j], mu, adaptation);
  }
  for (std::size_t j = 0; j < J; ++j) {
    const auto order = topo.neighborhood(j);
    auto out = w.filter(j);
    kernels::scale(c(j, order[0]), scratch.filter(order[0]), out, combination);
    for (std::size_t s = 1; s < order.size(); ++s) {
      kernels::axpy(c(j, order[s]), scratch.filter(order[s]), out, combination);
    }
  }
}

DiffusionState::DiffusionState(const BlockIndexMap& maps, std::size_t nodes, std::size_t taps)
    : taps_(taps) {
  for (std::size_t j = 0; j < nodes; ++j) {
    estimates_.emplace_back(maps.slots(j) * taps, 0.0);
    blocks_.emplace_back(maps.slots(j) * taps, 0.0);
  }
}

void DiffusionState::rebuild(const BlockIndexMap& maps, const GlobalFilter& w) {
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const auto order = maps.order(j);
    for (std::size_t s = 0; s < order.size(); ++s) {
      const auto src = w.filter(order[s]);
      std::copy(src.begin(), src.end(), blocks_[j].begin() + static_cast<long>(s * taps_));
    }
  }
}

bool DiffusionState::consistent(const BlockIndexMap& maps, const GlobalFilter& w) const {
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const auto order = maps.order(j);
    for (std::size_t s = 0; s < order.size(); ++s) {
      const auto src = w.filter(order[s]);
      if (!std::equal(src.begin(), src.end(), blocks_[j].begin() + static_cast<long>(s * taps_))) {
        return false;
      }
    }
  }
  return true;
}

void bdfxlms_bc_step(GlobalFilter& w, DiffusionState& state, const FilteredRefBank& bank,
                     std::span<const double> e, double mu, const BlockIndexMap& maps,
                     const CombinationMatrix& c, OpTally* adaptation, OpTally* combination) {
  const std::size_t J = w.nodes();
  const std::size_t I = w.taps();
  if (c.nodes() != J || e.size() != J || bank.nodes() != J || bank.filter_taps() != I) {
    throw Error(ErrorCode::DimensionMismatch, "bdfxlms_bc_step dimensions disagree");
  }
#ifndef NDEBUG
  if (!state.consistent(maps, w)) {
    throw Error(ErrorCode::InconsistentBlock, "block vectors do not match the global filter");
  }
#endif

  // 1. Neighborhood-wide adaptation.
  for (std::size_t j = 0; j < J; ++j) {
    const auto order = maps.order(j);
    double norm = bank.norm2(j, order[0]);
    for (std::size_t s = 1; s < order.size(); ++s) norm += bank.norm2(j, order[s]);
    const double coef = (mu * e[j]) / (norm + kNormDelta);
    kernels::count(adaptation, 2, order.size());
    auto est = state.estimate(j);
    const auto blk = state.block(j);
    std::copy(blk.begin(), blk.end(), est.begin());
    for (std::size_t s = 0; s < order.size(); ++s) {
      kernels::axpy(-coef, bank.window(j, order[s]), est.subspan(s * I, I), adaptation);
    }
  }

  // 2. Forward exchange and node-specific combination.
  for (std::size_t j = 0; j < J; ++j) {
    const auto order = maps.order(j);
    const auto slots = maps.reverse_slots(j);
    auto out = w.filter(j);
    for (std::size_t s = 0; s < order.size(); ++s) {
      const auto slice = state.estimate(order[s]).subspan(slots[s] * I, I);
      if (s == 0) {
        kernels::scale(c(j, order[s]), slice, out, combination);
      } else {
        kernels::axpy(c(j, order[s]), slice, out, combination);
      }
    }
  }

  // 3. Backward broadcast.
  state.rebuild(maps, w);
}

PairMask required_pairs(AlgorithmKind kind, const Topology& topo) {
  switch (kind) {
    case AlgorithmKind::cfxlms: return all_pairs(topo.nodes());
    case AlgorithmKind::dcfxlms:
    case AlgorithmKind::mdfxlms: return diagonal_pairs(topo.nodes());
    case AlgorithmKind::bdfxlms_bc: return neighborhood_pairs(topo);
  }
  return {};
}

Controller::Controller(AlgorithmKind kind, ControllerDims dims, double mu, Topology topo,
                       std::optional<CombinationMatrix> weights, CentralNorm central_norm)
    : kind_(kind), mu_(mu), central_norm_(central_norm), topo_(std::move(topo)) {
  if (dims.nodes == 0 || dims.filter_taps == 0) {
    throw Error(ErrorCode::DimensionMismatch, "controller needs J > 0 and I > 0");
  }
  if (topo_.nodes() != dims.nodes) {
    throw Error(ErrorCode::DimensionMismatch, "topology size differs from node count");
  }
  const bool diffusion = kind == AlgorithmKind::mdfxlms || kind == AlgorithmKind::bdfxlms_bc;
  if (diffusion) {
    if (!weights) throw Error(ErrorCode::ConfigError, to_string(kind) + " needs combination weights");
    if (weights->nodes() != dims.nodes) {
      throw Error(ErrorCode::DimensionMismatch, "combination matrix size differs from node count");
    }
    weights_ = std::move(*weights);
  }
  maps_ = BlockIndexMap(topo_);
  w_ = GlobalFilter(dims.nodes, dims.filter_taps);
  if (kind == AlgorithmKind::bdfxlms_bc) state_ = DiffusionState(maps_, dims.nodes, dims.filter_taps);
}

void Controller::output(std::span<const double> x_window, std::span<double> y, OpTally* tally) const {
  for (std::size_t j = 0; j < w_.nodes(); ++j) y[j] = kernels::dot(w_.filter(j), x_window, tally);
}

void Controller::adapt(std::span<const double> e, const FilteredRefBank& bank, PhaseTally* tally) {
  OpTally* adaptation = tally ? &tally->adaptation : nullptr;
  OpTally* combination = tally ? &tally->combination : nullptr;
  switch (kind_) {
    case AlgorithmKind::cfxlms:
      cfxlms_step(w_, bank, e, mu_, central_norm_, adaptation);
      break;
    case AlgorithmKind::dcfxlms:
      for (std::size_t j = 0; j < w_.nodes(); ++j) {
        dcfxlms_step(w_.filter(j), bank.window(j, j), bank.norm2(j, j), e[j], mu_, adaptation);
      }
      break;
    case AlgorithmKind::mdfxlms:
      mdfxlms_step(w_, scratch_, bank, e, mu_, topo_, weights_, adaptation, combination);
      break;
    case AlgorithmKind::bdfxlms_bc:
      bdfxlms_bc_step(w_, state_, bank, e, mu_, maps_, weights_, adaptation, combination);
      break;
  }
}

void Controller::set_filters(const GlobalFilter& w) {
  if (w.nodes() != w_.nodes() || w.taps() != w_.taps()) {
    throw Error(ErrorCode::DimensionMismatch, "replacement filters have the wrong shape");
  }
  w_ = w;
  if (kind_ == AlgorithmKind::bdfxlms_bc) state_.rebuild(maps_, w_);
}

Controller make_controller(AlgorithmKind kind, const Topology& topo,
                           std::optional<CombinationMatrix> weights, ControllerDims dims, double mu,
                           CentralNorm central_norm) {
  return Controller(kind, dims, mu, topo, std::move(weights), central_norm);
}

}  // namespace danc
