#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "danc/config.hpp"
#include "danc/global_filter.hpp"
#include "danc/metrics.hpp"
#include "danc/wiener.hpp"

namespace danc {

/// Seed for Monte Carlo run `run`, derived only from (base, run).
std::uint64_t run_seed(std::uint64_t base, std::size_t run);

using Snapshots = std::vector<std::pair<std::size_t, GlobalFilter>>;

/// One algorithm inside one Monte Carlo run.
struct RunTrace {
  AlgorithmKind kind = AlgorithmKind::cfxlms;
  PowerTrace power;
  bool diverged = false;
  std::size_t diverged_at = 0;
  GlobalFilter final_filter;
  Snapshots snapshots;
};

struct RunOutput {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<RunTrace> traces;  // same order as SimConfig::algorithms
};

/// Runs every configured algorithm once on shared reference and noise
/// realizations for Monte Carlo run `run`.
RunOutput simulate_run(const SimConfig& cfg, std::size_t run);

struct AlgorithmResult {
  AlgorithmKind kind = AlgorithmKind::cfxlms;
  double mu = 0.0;
  PowerTrace power;               // summed over runs
  std::vector<double> tau_db;     // normalized residual noise per iteration
  double steady_tau_db = 0.0;     // mean tau over the final steady_fraction
  std::vector<bool> diverged;     // per run
  std::vector<double> run_steady_tau_db;
  GlobalFilter mean_filter;       // mean final filter over runs that did not diverge
  std::size_t averaged_runs = 0;
  Snapshots snapshots;            // run-mean filters at snapshot iterations

  std::size_t diverged_count() const;
};

struct ExperimentResult {
  SimConfig config;
  std::vector<std::uint64_t> run_seeds;
  std::vector<AlgorithmResult> algorithms;

  const AlgorithmResult& get(AlgorithmKind kind) const;
};

/// Monte Carlo experiment. Runs may execute on several workers; results are
/// merged in run order so they do not depend on the worker count.
ExperimentResult run_experiment(const SimConfig& cfg);

/// Wiener solution for the configured scene on an independent reference record
/// of cfg.oracle_samples samples (first I + H samples excluded).
WienerSolution experiment_oracle(const SimConfig& cfg);

}  // namespace danc
