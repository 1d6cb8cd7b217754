#include "danc/network.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include "danc/error.hpp"

namespace danc {
namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

}  // namespace

Topology::Topology(const std::vector<std::vector<bool>>& adjacency) {
  const std::size_t J = adjacency.size();
  for (const auto& row : adjacency) {
    if (row.size() != J) throw Error(ErrorCode::DimensionMismatch, "adjacency must be square");
  }
  neighborhoods_.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t p = 0; p < J; ++p) {
      if (p != j && adjacency[j][p] != adjacency[p][j]) {
        std::ostringstream os;
        os << "link " << j + 1 << "-" << p + 1 << " is not mirrored";
        throw Error(ErrorCode::AsymmetricAdjacency, os.str());
      }
      if (p == j || adjacency[j][p]) neighborhoods_[j].push_back(p);
    }
  }
}

Topology Topology::ring(std::size_t nodes) {
  std::vector<std::vector<bool>> adj(nodes, std::vector<bool>(nodes, false));
  if (nodes > 1) {
    for (std::size_t j = 0; j < nodes; ++j) {
      const std::size_t next = (j + 1) % nodes;
      adj[j][next] = adj[next][j] = true;
    }
  }
  return Topology(adj);
}

Topology Topology::complete(std::size_t nodes) {
  return Topology(std::vector<std::vector<bool>>(nodes, std::vector<bool>(nodes, true)));
}

Topology Topology::isolated(std::size_t nodes) {
  return Topology(std::vector<std::vector<bool>>(nodes, std::vector<bool>(nodes, false)));
}

Topology Topology::from_edges(std::size_t nodes,
                              const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<bool>> adj(nodes, std::vector<bool>(nodes, false));
  for (const auto& [a, b] : edges) {
    if (a >= nodes || b >= nodes) throw Error(ErrorCode::ConfigError, "edge endpoint out of range");
    adj[a][b] = adj[b][a] = true;
  }
  return Topology(adj);
}

bool Topology::linked(std::size_t j, std::size_t p) const {
  const auto& n = neighborhoods_[j];
  return std::binary_search(n.begin(), n.end(), p);
}

std::size_t Topology::total_neighborhood_size() const {
  std::size_t total = 0;
  for (const auto& n : neighborhoods_) total += n.size();
  return total;
}

CombinationMatrix CombinationMatrix::identity(std::size_t nodes) {
  std::vector<double> dense(nodes * nodes, 0.0);
  for (std::size_t j = 0; j < nodes; ++j) dense[j * nodes + j] = 1.0;
  return {nodes, std::move(dense)};
}

CombinationMatrix combination_weights(const Topology& topo, WeightRule rule) {
  const std::size_t J = topo.nodes();
  std::vector<double> dense(J * J, 0.0);
  std::size_t max_degree = 0;
  for (std::size_t j = 0; j < J; ++j) max_degree = std::max(max_degree, topo.degree(j));
  const double eps = 1.0 / static_cast<double>(max_degree + 1);

  for (std::size_t j = 0; j < J; ++j) {
    double off = 0.0;
    for (std::size_t p : topo.neighborhood(j)) {
      if (p == j) continue;
      double c = 0.0;
      switch (rule) {
        case WeightRule::uniform:
          c = 1.0 / static_cast<double>(topo.neighborhood(j).size());
          break;
        case WeightRule::laplacian:
          c = eps;
          break;
        case WeightRule::metropolis:
          c = 1.0 / static_cast<double>(1 + std::max(topo.degree(j), topo.degree(p)));
          break;
      }
      dense[j * J + p] = c;
      off += c;
    }
    dense[j * J + j] = 1.0 - off;
  }
  return {J, std::move(dense)};
}

BlockIndexMap::BlockIndexMap(const Topology& topo) {
  const std::size_t J = topo.nodes();
  for (std::size_t j = 0; j < J; ++j) {
    const auto n = topo.neighborhood(j);
    order_.emplace_back(n.begin(), n.end());
  }
  position_.assign(J, std::vector<std::size_t>(J, npos));
  for (std::size_t j = 0; j < J; ++j) {
    const auto order = topo.neighborhood(j);
    for (std::size_t s = 0; s < order.size(); ++s) position_[j][order[s]] = s;
  }
  reverse_.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t p : topo.neighborhood(j)) reverse_[j].push_back(position_[p][j]);
  }
}

std::size_t BlockIndexMap::position_of(std::size_t j, std::size_t p) const {
  if (j >= position_.size() || p >= position_.size() || position_[j][p] == npos) {
    std::ostringstream os;
    os << "node " << p + 1 << " is not in the neighborhood of node " << j + 1;
    throw Error(ErrorCode::NotANeighbor, os.str());
  }
  return position_[j][p];
}

void write_edge_list_csv(std::ostream& os, const Topology& topo, const CombinationMatrix& c) {
  os << "j,p,weight\n";
  os.precision(17);
  for (std::size_t j = 0; j < topo.nodes(); ++j) {
    for (std::size_t p : topo.neighborhood(j)) os << j + 1 << ',' << p + 1 << ',' << c(j, p) << '\n';
  }
}

}  // namespace danc
