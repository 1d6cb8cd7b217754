#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "danc/filtered_ref.hpp"
#include "danc/global_filter.hpp"
#include "danc/kernels.hpp"
#include "danc/network.hpp"

namespace danc {

enum class AlgorithmKind { cfxlms, dcfxlms, mdfxlms, bdfxlms_bc };

std::string to_string(AlgorithmKind kind);
AlgorithmKind parse_algorithm(const std::string& name);
/// Display label used in trace files, e.g. "BDFxLMS-BC".
std::string label(AlgorithmKind kind);

/// Regularizer added to every normalization denominator.
inline constexpr double kNormDelta = 1e-10;

/// Centralized normalization. `block` divides each e_j F_jk term by its own
/// ||F_jk||^2; `stacked` divides the whole gradient F^T e by ||F||^2 summed
/// over all J^2 blocks.
enum class CentralNorm { block, stacked };

/// Arithmetic tallies split by what the operations are for.
struct PhaseTally {
  OpTally filtering;       // control output y_j = w_j^T x
  OpTally filtered_ref;    // h_jk * x
  OpTally normalization;   // squared norms of regressors
  OpTally adaptation;      // gradient steps
  OpTally combination;     // neighborhood averaging

  OpTally total() const {
    OpTally t;
    t += filtering;
    t += filtered_ref;
    t += normalization;
    t += adaptation;
    t += combination;
    return t;
  }
};

/// Centralized update: w_k -= mu * sum_j e_j F_jk / norm.
void cfxlms_step(GlobalFilter& w, const FilteredRefBank& bank, std::span<const double> e,
                 double mu, CentralNorm norm = CentralNorm::stacked, OpTally* tally = nullptr);

/// Single-node NLMS update w_j -= mu e_j F_jj / (||F_jj||^2 + delta).
void dcfxlms_step(std::span<double> w_j, std::span<const double> f_jj, double norm2, double e_j,
                  double mu, OpTally* tally = nullptr);

/// Adapt-then-combine: local NLMS on every node, then w_j = sum_p c_jp w~_p.
/// `scratch` receives the intermediate estimates and is resized as needed.
void mdfxlms_step(GlobalFilter& w, GlobalFilter& scratch, const FilteredRefBank& bank,
                  std::span<const double> e, double mu, const Topology& topo,
                  const CombinationMatrix& c, OpTally* adaptation = nullptr,
                  OpTally* combination = nullptr);

/// Per-node block state of the block diffusion controller. For node j,
/// estimate(j) holds its estimates of the filters in N_j and block(j) the copy
/// of those filters received at the end of the previous iteration.
class DiffusionState {
 public:
  DiffusionState() = default;
  DiffusionState(const BlockIndexMap& maps, std::size_t nodes, std::size_t taps);

  std::span<double> estimate(std::size_t j) { return estimates_[j]; }
  std::span<const double> estimate(std::size_t j) const { return estimates_[j]; }
  std::span<double> block(std::size_t j) { return blocks_[j]; }
  std::span<const double> block(std::size_t j) const { return blocks_[j]; }

  /// Rebuilds every block from w (backward broadcast).
  void rebuild(const BlockIndexMap& maps, const GlobalFilter& w);
  /// True when every block equals col{w_p : p in N_j} exactly.
  bool consistent(const BlockIndexMap& maps, const GlobalFilter& w) const;

 private:
  std::size_t taps_ = 0;
  std::vector<std::vector<double>> estimates_;
  std::vector<std::vector<double>> blocks_;
};

/// One block diffusion iteration with bidirectional exchange:
///  1. each node adapts its whole block against its own error,
///     est_j = block_j - mu e_j f_j / (||f_j||^2 + delta), f_j = col{F_jp : p in N_j};
///  2. node j gathers from every neighbor p the slice of est_p addressing
///     filter j and sets w_j = sum_p c_jp (that slice);
///  3. every node rebuilds block_j = col{w_p : p in N_j}.
void bdfxlms_bc_step(GlobalFilter& w, DiffusionState& state, const FilteredRefBank& bank,
                     std::span<const double> e, double mu, const BlockIndexMap& maps,
                     const CombinationMatrix& c, OpTally* adaptation = nullptr,
                     OpTally* combination = nullptr);

struct ControllerDims {
  std::size_t nodes = 10;
  std::size_t filter_taps = 260;
};

/// Filtered references an algorithm needs.
PairMask required_pairs(AlgorithmKind kind, const Topology& topo);

/// A zero-initialized controller of one kind, owning its filters and any
/// diffusion state.
class Controller {
 public:
  Controller(AlgorithmKind kind, ControllerDims dims, double mu, Topology topo,
             std::optional<CombinationMatrix> weights, CentralNorm central_norm = CentralNorm::stacked);

  /// y_j = w_j^T [x(n) .. x(n-I+1)].
  void output(std::span<const double> x_window, std::span<double> y, OpTally* tally = nullptr) const;

  /// One update using e(n) and the regressors at n.
  void adapt(std::span<const double> e, const FilteredRefBank& bank, PhaseTally* tally = nullptr);

  AlgorithmKind kind() const { return kind_; }
  double mu() const { return mu_; }
  const GlobalFilter& filters() const { return w_; }
  const DiffusionState& diffusion() const { return state_; }
  const Topology& topology() const { return topo_; }
  const BlockIndexMap& maps() const { return maps_; }

  /// Replaces the filters (and rebuilds any diffusion blocks).
  void set_filters(const GlobalFilter& w);

 private:
  AlgorithmKind kind_;
  double mu_;
  CentralNorm central_norm_;
  Topology topo_;
  CombinationMatrix weights_;
  BlockIndexMap maps_;
  GlobalFilter w_;
  GlobalFilter scratch_;
  DiffusionState state_;
};

Controller make_controller(AlgorithmKind kind, const Topology& topo,
                           std::optional<CombinationMatrix> weights, ControllerDims dims, double mu,
                           CentralNorm central_norm = CentralNorm::stacked);

}  // namespace danc
