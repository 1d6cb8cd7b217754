#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "danc/acoustics.hpp"
#include "danc/algorithms.hpp"
#include "danc/network.hpp"
#include "danc/plant.hpp"

namespace danc {

struct StepSizes {
  double cfxlms = 0.1;
  double dcfxlms = 0.1;
  double mdfxlms = 0.1;
  double bdfxlms_bc = 0.1;

  double of(AlgorithmKind kind) const;
  void set(AlgorithmKind kind, double mu);
};

/// Everything needed to reproduce an experiment.
struct SimConfig {
  SceneParams scene;
  std::size_t filter_taps = 260;
  PlantMode plant = PlantMode::slow_variation;

  SignalSpec signal;
  std::size_t samples = 60000;
  std::size_t runs = 1;
  std::uint64_t seed = 1;
  double snr_db = 30.0;

  std::vector<AlgorithmKind> algorithms{AlgorithmKind::cfxlms, AlgorithmKind::dcfxlms,
                                        AlgorithmKind::mdfxlms, AlgorithmKind::bdfxlms_bc};
  StepSizes mu;
  CentralNorm central_norm = CentralNorm::stacked;
  std::string topology = "ring";  // ring | complete | isolated | edges:1-2,2-3,...
  WeightRule weights = WeightRule::metropolis;

  std::size_t smoothing_window = 1;
  std::size_t snapshot_interval = 0;  // 0: final filters only
  double divergence_tau_db = 10.0;
  double divergence_filter_limit = 1e6;
  std::size_t divergence_window = 1000;
  double steady_fraction = 0.1;
  std::size_t oracle_samples = 20000;
  unsigned workers = 0;  // 0: hardware concurrency

  Topology build_topology() const;
};

/// Applies one `key=value` assignment; throws ConfigError on unknown keys or bad values.
void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value);
void apply_setting(SimConfig& cfg, const std::string& assignment);

/// Reads `key = value` lines; `#` starts a comment.
void apply_config_text(SimConfig& cfg, std::istream& in);
void apply_config_file(SimConfig& cfg, const std::string& path);

/// Writes every key in the format apply_config_text reads back.
void write_config(std::ostream& os, const SimConfig& cfg);

std::vector<std::string> preset_names();
/// Named presets: "paper-tone", "paper-broadband" ("paper" is an alias of
/// the latter).
SimConfig preset(const std::string& name);

std::string to_string(WeightRule rule);
std::string to_string(PlantMode mode);
std::string to_string(CentralNorm norm);
std::string to_string(SignalKind kind);
std::string to_string(DelayMode mode);

}  // namespace danc
