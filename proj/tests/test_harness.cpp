#include <doctest.h>

#include <cmath>

#include "danc/error.hpp"
#include "danc/harness.hpp"

using namespace danc;

namespace {

SimConfig small(std::size_t runs = 2) {
  SimConfig c = preset("paper-tone");
  c.scene.nodes = 4;
  c.filter_taps = 24;
  c.samples = 3000;
  c.runs = runs;
  c.workers = 1;
  c.smoothing_window = 1;
  c.mu.set(AlgorithmKind::cfxlms, 1.0);
  c.mu.set(AlgorithmKind::dcfxlms, 0.2);
  c.mu.set(AlgorithmKind::mdfxlms, 0.2);
  c.mu.set(AlgorithmKind::bdfxlms_bc, 0.2);
  return c;
}

bool same_series(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) != std::isnan(b[i])) return false;
    if (!std::isnan(a[i]) && a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("run seeds depend only on base and index") {
  CHECK(run_seed(1, 0) == run_seed(1, 0));
  CHECK(run_seed(1, 0) != run_seed(1, 1));
  CHECK(run_seed(1, 0) != run_seed(2, 0));
}

TEST_CASE("experiments are bit reproducible and independent of worker count") {
  auto cfg = small(3);
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  cfg.workers = 3;
  const auto c = run_experiment(cfg);
  REQUIRE(a.algorithms.size() == 4);
  CHECK(a.run_seeds == c.run_seeds);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(same_series(a.algorithms[k].tau_db, b.algorithms[k].tau_db));
    CHECK(same_series(a.algorithms[k].tau_db, c.algorithms[k].tau_db));
    CHECK(a.algorithms[k].mean_filter == c.algorithms[k].mean_filter);
    CHECK(a.algorithms[k].diverged == c.algorithms[k].diverged);
  }
}

TEST_CASE("a run does not depend on how many runs follow it") {
  const auto cfg = small(1);
  const auto one = simulate_run(cfg, 0);
  auto more = small(3);
  const auto exp = run_experiment(more);
  const auto again = simulate_run(more, 0);
  REQUIRE(one.traces.size() == again.traces.size());
  for (std::size_t k = 0; k < one.traces.size(); ++k) {
    CHECK(one.traces[k].power.residual == again.traces[k].power.residual);
    CHECK(one.traces[k].final_filter == again.traces[k].final_filter);
  }
  CHECK(exp.run_seeds.front() == one.seed);
}

TEST_CASE("converging algorithms reduce the residual") {
  auto cfg = small(1);
  cfg.samples = 8000;
  const auto r = run_experiment(cfg);
  for (const auto& a : r.algorithms) {
    CHECK(a.diverged_count() == 0);
    CHECK(a.steady_tau_db < -3.0);
  }
}

TEST_CASE("an oversized step is flagged as diverged") {
  auto cfg = small(2);
  cfg.algorithms = {AlgorithmKind::dcfxlms};
  cfg.mu.set(AlgorithmKind::dcfxlms, 6.1);
  const auto r = run_experiment(cfg);
  CHECK(r.get(AlgorithmKind::dcfxlms).diverged_count() == 2);
  CHECK_THROWS_AS(r.get(AlgorithmKind::cfxlms), Error);
}

TEST_CASE("snapshots") {
  auto cfg = small(2);
  cfg.snapshot_interval = 1000;
  const auto r = run_experiment(cfg);
  const auto& s = r.get(AlgorithmKind::bdfxlms_bc).snapshots;
  REQUIRE(s.size() == 3);
  CHECK(s[0].first == 1000);
  CHECK(s[2].first == 3000);
  CHECK(s[2].second == r.get(AlgorithmKind::bdfxlms_bc).mean_filter);
}

TEST_CASE("invalid configurations") {
  auto check = [](auto mutate) {
    auto cfg = small(1);
    mutate(cfg);
    try {
      run_experiment(cfg);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  };
  check([](SimConfig& c) { c.samples = 0; });
  check([](SimConfig& c) { c.runs = 0; });
  check([](SimConfig& c) { c.algorithms.clear(); });
  check([](SimConfig& c) { c.mu.set(AlgorithmKind::mdfxlms, 0.0); });
  check([](SimConfig& c) { c.steady_fraction = 0.0; });
}

TEST_CASE("experiment oracle on a small scene") {
  auto cfg = small(1);
  cfg.signal.kind = SignalKind::bandpass_noise;
  cfg.oracle_samples = 4000;
  const auto o = experiment_oracle(cfg);
  CHECK(o.w_opt.nodes() == 4);
  CHECK(o.w_opt.taps() == 24);
  CHECK(o.normal_residual < 1e-6);
  double res = 0.0, dist = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    res += o.residual_power[j];
    dist += o.disturbance_power[j];
  }
  CHECK(res < dist);
  CHECK(experiment_oracle(cfg).w_opt == o.w_opt);
}
