#pragma once

// Randomized equivalence and consistency checks shared by the unit suite and
// the acceptance report. Each returns how many of `instances` random cases
// passed.

#include <cstddef>
#include <random>
#include <vector>

#include "danc/algorithms.hpp"
#include "danc/filtered_ref.hpp"
#include "danc/network.hpp"

namespace props {

using namespace danc;

struct Instance {
  std::size_t J, I, H, steps;
  double mu;
  std::vector<std::vector<ImpulseResponse>> paths;
  std::vector<double> x;
  std::vector<std::vector<double>> e;
};

inline Instance draw(std::mt19937_64& rng, std::size_t J) {
  std::uniform_int_distribution<std::size_t> taps(1, 9), steps(5, 30);
  std::uniform_real_distribution<double> mu(0.01, 1.5);
  std::normal_distribution<double> g(0.0, 1.0);
  Instance in{J, taps(rng), taps(rng), steps(rng), mu(rng), {}, {}, {}};
  in.paths.assign(J, std::vector<ImpulseResponse>(J));
  for (auto& row : in.paths)
    for (auto& ir : row) {
      ir.fs = 1.0;
      for (std::size_t t = 0; t < in.H; ++t) ir.coeffs.push_back(g(rng));
    }
  for (std::size_t n = 0; n < in.steps; ++n) {
    in.x.push_back(g(rng));
    std::vector<double> e(J);
    for (auto& v : e) v = g(rng);
    in.e.push_back(e);
  }
  return in;
}

inline Topology random_topology(std::mt19937_64& rng, std::size_t J) {
  std::bernoulli_distribution link(0.45);
  std::vector<std::vector<bool>> adj(J, std::vector<bool>(J, false));
  for (std::size_t a = 0; a < J; ++a)
    for (std::size_t b = a + 1; b < J; ++b)
      if (link(rng)) adj[a][b] = adj[b][a] = true;
  return Topology(adj);
}

// Runs DCFxLMS on every node for the instance and returns the filters.
inline GlobalFilter run_dc(const Instance& in) {
  FilteredRefBank bank(in.paths, in.I, all_pairs(in.J));
  GlobalFilter w(in.J, in.I);
  for (std::size_t n = 0; n < in.steps; ++n) {
    bank.step(in.x[n]);
    for (std::size_t j = 0; j < in.J; ++j)
      dcfxlms_step(w.filter(j), bank.window(j, j), bank.norm2(j, j), in.e[n][j], in.mu);
  }
  return w;
}

inline int cf_single_node_matches_dc(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int ok = 0;
  for (int t = 0; t < instances; ++t) {
    const Instance in = draw(rng, 1);
    const GlobalFilter ref = run_dc(in);
    bool same = true;
    for (auto norm : {CentralNorm::stacked, CentralNorm::block}) {
      FilteredRefBank bank(in.paths, in.I, all_pairs(1));
      GlobalFilter w(1, in.I);
      for (std::size_t n = 0; n < in.steps; ++n) {
        bank.step(in.x[n]);
        cfxlms_step(w, bank, in.e[n], in.mu, norm);
      }
      same = same && w == ref;
    }
    ok += same;
  }
  return ok;
}

inline int md_identity_matches_dc(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int ok = 0;
  for (int t = 0; t < instances; ++t) {
    const std::size_t J = 1 + static_cast<std::size_t>(t % 6);
    const Instance in = draw(rng, J);
    const GlobalFilter ref = run_dc(in);
    // Self-only neighborhoods, and a connected graph whose weights are the identity.
    bool same = true;
    for (const Topology& topo : {Topology::isolated(J), random_topology(rng, J)}) {
      FilteredRefBank bank(in.paths, in.I, all_pairs(J));
      GlobalFilter w(J, in.I), scratch;
      const auto c = CombinationMatrix::identity(J);
      for (std::size_t n = 0; n < in.steps; ++n) {
        bank.step(in.x[n]);
        mdfxlms_step(w, scratch, bank, in.e[n], in.mu, topo, c);
      }
      same = same && w == ref;
    }
    ok += same;
  }
  return ok;
}

inline int bd_self_only_matches_dc(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int ok = 0;
  for (int t = 0; t < instances; ++t) {
    const std::size_t J = 1 + static_cast<std::size_t>(t % 6);
    const Instance in = draw(rng, J);
    const GlobalFilter ref = run_dc(in);
    const Topology topo = Topology::isolated(J);
    const BlockIndexMap maps(topo);
    FilteredRefBank bank(in.paths, in.I, all_pairs(J));
    GlobalFilter w(J, in.I);
    DiffusionState state(maps, J, in.I);
    const auto c = combination_weights(topo, WeightRule::metropolis);
    for (std::size_t n = 0; n < in.steps; ++n) {
      bank.step(in.x[n]);
      bdfxlms_bc_step(w, state, bank, in.e[n], in.mu, maps, c);
    }
    ok += w == ref;
  }
  return ok;
}

// After every block diffusion step each node's block must equal the stacked
// filters of its neighborhood, compared element by element.
inline int bd_blocks_stay_consistent(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int ok = 0;
  for (int t = 0; t < instances; ++t) {
    const std::size_t J = 2 + static_cast<std::size_t>(t % 7);
    const Instance in = draw(rng, J);
    const Topology topo = random_topology(rng, J);
    const BlockIndexMap maps(topo);
    FilteredRefBank bank(in.paths, in.I, neighborhood_pairs(topo));
    GlobalFilter w(J, in.I);
    DiffusionState state(maps, J, in.I);
    const auto c = combination_weights(topo, t % 2 ? WeightRule::uniform : WeightRule::metropolis);
    bool good = true;
    for (std::size_t n = 0; n < in.steps && good; ++n) {
      bank.step(in.x[n]);
      bdfxlms_bc_step(w, state, bank, in.e[n], in.mu, maps, c);
      for (std::size_t j = 0; j < J && good; ++j) {
        const auto order = topo.neighborhood(j);
        const auto blk = state.block(j);
        for (std::size_t s = 0; s < order.size(); ++s)
          for (std::size_t i = 0; i < in.I; ++i) good = good && blk[s * in.I + i] == w.filter(order[s])[i];
      }
    }
    ok += good;
  }
  return ok;
}

}  // namespace props
