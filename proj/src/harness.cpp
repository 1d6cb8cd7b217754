#include "danc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

#include "danc/error.hpp"
#include "danc/filtered_ref.hpp"
#include "danc/plant.hpp"

namespace danc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void validate(const SimConfig& cfg) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::ConfigError, why); };
  if (cfg.samples == 0) fail("samples must be positive");
  if (cfg.runs == 0) fail("runs must be positive");
  if (cfg.filter_taps == 0) fail("filter_taps must be positive");
  if (cfg.algorithms.empty()) fail("no algorithms selected");
  if (!(cfg.steady_fraction > 0.0 && cfg.steady_fraction <= 1.0)) fail("steady_fraction must be in (0, 1]");
  if (cfg.divergence_window == 0) fail("divergence_window must be positive");
  for (auto kind : cfg.algorithms) {
    if (!(cfg.mu.of(kind) > 0.0)) fail("step size for " + to_string(kind) + " must be positive");
  }
}

// Per-algorithm state inside a run.
struct Lane {
  Controller controller;
  OutputHistory history;
  RunTrace trace;
  double block_residual = 0.0;
  double block_disturbance = 0.0;
};

}  // namespace

std::uint64_t run_seed(std::uint64_t base, std::size_t run) {
  return splitmix64(splitmix64(base) ^ splitmix64(0xA5A5A5A5ULL + run));
}

std::size_t AlgorithmResult::diverged_count() const {
  return static_cast<std::size_t>(std::count(diverged.begin(), diverged.end(), true));
}

const AlgorithmResult& ExperimentResult::get(AlgorithmKind kind) const {
  for (const auto& a : algorithms) {
    if (a.kind == kind) return a;
  }
  throw Error(ErrorCode::ConfigError, "algorithm " + to_string(kind) + " was not run");
}

RunOutput simulate_run(const SimConfig& cfg, std::size_t run) {
  validate(cfg);
  const Scene scene = build_scene(cfg.scene);
  const Topology topo = cfg.build_topology();
  const CombinationMatrix weights = combination_weights(topo, cfg.weights);
  const std::size_t J = cfg.scene.nodes, I = cfg.filter_taps, N = cfg.samples;

  RunOutput out;
  out.index = run;
  out.seed = run_seed(cfg.seed, run);

  SignalSpec spec = cfg.signal;
  spec.seed = splitmix64(out.seed ^ 0x1ULL);
  const auto x = gen_signal(spec, cfg.scene.fs, N);

  // Sensor noise is calibrated per mic against a noiseless pass of the primary path.
  std::vector<double> variance;
  if (!(std::isinf(cfg.snr_db) && cfg.snr_db > 0.0)) {
    for (std::size_t j = 0; j < J; ++j) {
      Convolver primary(scene.paths.primary[j]);
      double power = 0.0;
      for (double xn : x) {
        const double d = primary.step(xn);
        power += d * d;
      }
      variance.push_back(sensor_noise_variance(cfg.snr_db, power / static_cast<double>(N)));
    }
  }
  Plant plant(scene.paths, I, cfg.plant, variance, splitmix64(out.seed ^ 0x2ULL));

  // Controllers read the model regressors; with a perfect model in the
  // slow-variation plant they coincide with the plant's own.
  const bool share_bank = plant.true_bank() != nullptr && cfg.scene.model_perturbation == 0.0;
  std::optional<FilteredRefBank> model_bank;
  if (!share_bank) model_bank.emplace(scene.paths.secondary_model, I, all_pairs(J));
  const FilteredRefBank& bank = share_bank ? *plant.true_bank() : *model_bank;

  std::vector<Lane> lanes;
  for (auto kind : cfg.algorithms) {
    const bool diffusion = kind == AlgorithmKind::mdfxlms || kind == AlgorithmKind::bdfxlms_bc;
    Lane lane{make_controller(kind, topo, diffusion ? std::optional(weights) : std::nullopt, {J, I},
                              cfg.mu.of(kind), cfg.central_norm),
              plant.make_history(), RunTrace{}};
    lane.trace.kind = kind;
    lane.trace.power.resize(N);
    lanes.push_back(std::move(lane));
  }

  std::vector<double> y(J), e(J);
  const bool causal = cfg.plant == PlantMode::causal;
  for (std::size_t n = 0; n < N; ++n) {
    plant.advance(x[n]);
    if (model_bank) model_bank->step(x[n]);
    double dist = 0.0;
    for (double d : plant.disturbance()) dist += d * d;

    for (auto& lane : lanes) {
      auto& ctl = lane.controller;
      if (causal) ctl.output(plant.reference_window(), y);
      plant.error(ctl.filters(), y, lane.history, e);
      double res = 0.0;
      for (double v : e) res += v * v;
      lane.trace.power.residual[n] = res;
      lane.trace.power.disturbance[n] = dist;

      if (!lane.trace.diverged) {
        ctl.adapt(e, bank);
        const auto& w = ctl.filters();
        bool blown = !(w.max_abs() <= cfg.divergence_filter_limit);
        lane.block_residual += res;
        lane.block_disturbance += dist;
        if ((n + 1) % cfg.divergence_window == 0) {
          if (lane.block_disturbance > 0.0 &&
              10.0 * std::log10(lane.block_residual / lane.block_disturbance) > cfg.divergence_tau_db) {
            blown = true;
          }
          lane.block_residual = lane.block_disturbance = 0.0;
        }
        if (blown) {
          lane.trace.diverged = true;
          lane.trace.diverged_at = n;
        }
      }
      if (cfg.snapshot_interval > 0 && (n + 1) % cfg.snapshot_interval == 0 && n + 1 < N) {
        lane.trace.snapshots.emplace_back(n + 1, ctl.filters());
      }
    }
  }
  for (auto& lane : lanes) {
    lane.trace.final_filter = lane.controller.filters();
    lane.trace.snapshots.emplace_back(N, lane.controller.filters());
    out.traces.push_back(std::move(lane.trace));
  }
  return out;
}

namespace {

void accumulate(GlobalFilter& sum, const GlobalFilter& w) {
  if (sum.nodes() == 0) {
    sum = GlobalFilter(w.nodes(), w.taps());
  }
  auto s = sum.data();
  const auto v = w.data();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += v[i];
}

void scale(GlobalFilter& w, double a) {
  for (auto& v : w.data()) v *= a;
}

// Folds run outputs into per-algorithm aggregates strictly in run order.
class OrderedMerger {
 public:
  OrderedMerger(const SimConfig& cfg, ExperimentResult& result) : cfg_(cfg), result_(result) {
    for (auto kind : cfg.algorithms) {
      AlgorithmResult a;
      a.kind = kind;
      a.mu = cfg.mu.of(kind);
      a.power.resize(cfg.samples);
      result_.algorithms.push_back(std::move(a));
    }
    all_sum_.resize(cfg.algorithms.size());
    kept_sum_.resize(cfg.algorithms.size());
    snap_sum_.resize(cfg.algorithms.size());
    snap_count_.resize(cfg.algorithms.size());
  }

  void submit(RunOutput run) {
    std::lock_guard lock(mutex_);
    pending_.emplace(run.index, std::move(run));
    while (!pending_.empty() && pending_.begin()->first == next_) {
      merge(pending_.begin()->second);
      pending_.erase(pending_.begin());
      ++next_;
    }
  }

  void finish() {
    for (std::size_t a = 0; a < result_.algorithms.size(); ++a) {
      auto& agg = result_.algorithms[a];
      agg.tau_db = normalized_residual_db(agg.power, cfg_.smoothing_window);
      agg.steady_tau_db = steady_state_db(agg.tau_db, cfg_.steady_fraction);
      if (agg.averaged_runs > 0) {
        agg.mean_filter = kept_sum_[a];
        scale(agg.mean_filter, 1.0 / static_cast<double>(agg.averaged_runs));
      } else {
        agg.mean_filter = all_sum_[a];
        scale(agg.mean_filter, 1.0 / static_cast<double>(cfg_.runs));
      }
      for (std::size_t s = 0; s < snap_sum_[a].size(); ++s) {
        auto w = snap_sum_[a][s].second;
        scale(w, 1.0 / static_cast<double>(std::max<std::size_t>(1, snap_count_[a])));
        agg.snapshots.emplace_back(snap_sum_[a][s].first, std::move(w));
      }
    }
  }

 private:
  void merge(const RunOutput& run) {
    result_.run_seeds.push_back(run.seed);
    for (std::size_t a = 0; a < run.traces.size(); ++a) {
      const auto& t = run.traces[a];
      auto& agg = result_.algorithms[a];
      agg.power += t.power;
      agg.diverged.push_back(t.diverged);
      agg.run_steady_tau_db.push_back(
          steady_state_db(normalized_residual_db(t.power, cfg_.smoothing_window), cfg_.steady_fraction));
      accumulate(all_sum_[a], t.final_filter);
      if (!t.diverged) {
        accumulate(kept_sum_[a], t.final_filter);
        ++agg.averaged_runs;
        if (snap_sum_[a].empty()) {
          for (const auto& [it, w] : t.snapshots) snap_sum_[a].emplace_back(it, GlobalFilter(w.nodes(), w.taps()));
        }
        for (std::size_t s = 0; s < t.snapshots.size(); ++s) accumulate(snap_sum_[a][s].second, t.snapshots[s].second);
        ++snap_count_[a];
      }
    }
  }

  const SimConfig& cfg_;
  ExperimentResult& result_;
  std::mutex mutex_;
  std::map<std::size_t, RunOutput> pending_;
  std::size_t next_ = 0;
  std::vector<GlobalFilter> all_sum_;
  std::vector<GlobalFilter> kept_sum_;
  std::vector<Snapshots> snap_sum_;
  std::vector<std::size_t> snap_count_;
};

}  // namespace

ExperimentResult run_experiment(const SimConfig& cfg) {
  validate(cfg);
  ExperimentResult result;
  result.config = cfg;
  OrderedMerger merger(cfg, result);

  unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.runs));

  std::mutex claim_mutex;
  std::size_t next_run = 0;
  std::exception_ptr failure;
  auto work = [&] {
    for (;;) {
      std::size_t run;
      {
        std::lock_guard lock(claim_mutex);
        if (next_run >= cfg.runs || failure) return;
        run = next_run++;
      }
      try {
        merger.submit(simulate_run(cfg, run));
      } catch (...) {
        std::lock_guard lock(claim_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  merger.finish();
  return result;
}

WienerSolution experiment_oracle(const SimConfig& cfg) {
  validate(cfg);
  const Scene scene = build_scene(cfg.scene);
  SignalSpec spec = cfg.signal;
  spec.seed = splitmix64(splitmix64(cfg.seed) ^ 0x3ULL);
  const auto x = gen_signal(spec, cfg.scene.fs, cfg.oracle_samples);
  return wiener_oracle(scene.paths, x, cfg.filter_taps, cfg.filter_taps + scene.paths.taps());
}

}  // namespace danc
