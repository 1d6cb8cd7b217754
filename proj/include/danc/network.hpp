#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace danc {

/// Undirected node graph. Every neighborhood is sorted ascending and contains
/// the node itself; links are symmetric.
class Topology {
 public:
  Topology() = default;

  /// Builds from a symmetric adjacency matrix; diagonal entries are ignored.
  explicit Topology(const std::vector<std::vector<bool>>& adjacency);

  static Topology ring(std::size_t nodes);
  static Topology complete(std::size_t nodes);
  static Topology isolated(std::size_t nodes);
  static Topology from_edges(std::size_t nodes,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t nodes() const { return neighborhoods_.size(); }
  std::span<const std::size_t> neighborhood(std::size_t j) const { return neighborhoods_[j]; }
  /// Number of links, excluding the node itself.
  std::size_t degree(std::size_t j) const { return neighborhoods_[j].size() - 1; }
  bool linked(std::size_t j, std::size_t p) const;
  /// Sum of |N_j| over all nodes.
  std::size_t total_neighborhood_size() const;

 private:
  std::vector<std::vector<std::size_t>> neighborhoods_;
};

enum class WeightRule { uniform, laplacian, metropolis };

/// Row-stochastic combination weights supported on the neighborhoods.
class CombinationMatrix {
 public:
  CombinationMatrix() = default;
  CombinationMatrix(std::size_t nodes, std::vector<double> dense)
      : nodes_(nodes), dense_(std::move(dense)) {}

  static CombinationMatrix identity(std::size_t nodes);

  std::size_t nodes() const { return nodes_; }
  /// Zero outside the neighborhood support.
  double operator()(std::size_t j, std::size_t p) const { return dense_[j * nodes_ + p]; }

 private:
  std::size_t nodes_ = 0;
  std::vector<double> dense_;
};

CombinationMatrix combination_weights(const Topology& topo, WeightRule rule);

/// Index arithmetic standing in for the stacking, selection and mapping
/// operators: slot s of node j's block vector holds filter order(j)[s].
class BlockIndexMap {
 public:
  BlockIndexMap() = default;
  explicit BlockIndexMap(const Topology& topo);

  std::span<const std::size_t> order(std::size_t j) const { return order_[j]; }
  std::size_t slots(std::size_t j) const { return order(j).size(); }

  /// Slot of filter p inside node j's block; throws NotANeighbor if p is not in N_j.
  std::size_t position_of(std::size_t j, std::size_t p) const;

  /// For node j and each s: the slot of filter j inside node order(j)[s]'s block.
  std::span<const std::size_t> reverse_slots(std::size_t j) const { return reverse_[j]; }

 private:
  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::vector<std::size_t>> position_;  // dense J x J, npos when unlinked
  std::vector<std::vector<std::size_t>> reverse_;
};

/// Edge-list dump: header "j,p,weight", one row per supported entry, 1-based.
void write_edge_list_csv(std::ostream& os, const Topology& topo, const CombinationMatrix& c);

}  // namespace danc
