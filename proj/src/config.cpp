#include "danc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "danc/error.hpp"

namespace danc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorCode::ConfigError, "'" + key + "=" + value + "': " + why);
}

double to_double(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf" || v == "none" || v == "off") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) bad(key, v, "not a number");
    return d;
  } catch (const std::logic_error&) {
    bad(key, v, "not a number");
  }
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(key, v, "not a non-negative integer");
  return out;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  return static_cast<std::size_t>(to_uint(key, v));
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

using Setter = std::function<void(SimConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"fs", [](SimConfig& c, const auto& k, const auto& v) { c.scene.fs = to_double(k, v); }},
      {"nodes", [](SimConfig& c, const auto& k, const auto& v) { c.scene.nodes = to_size(k, v); }},
      {"path_taps", [](SimConfig& c, const auto& k, const auto& v) { c.scene.taps = to_size(k, v); }},
      {"filter_taps", [](SimConfig& c, const auto& k, const auto& v) { c.filter_taps = to_size(k, v); }},
      {"mic_radius", [](SimConfig& c, const auto& k, const auto& v) { c.scene.mic_radius = to_double(k, v); }},
      {"spk_radius", [](SimConfig& c, const auto& k, const auto& v) { c.scene.spk_radius = to_double(k, v); }},
      {"src_distance", [](SimConfig& c, const auto& k, const auto& v) { c.scene.src_distance = to_double(k, v); }},
      {"speed_of_sound",
       [](SimConfig& c, const auto& k, const auto& v) { c.scene.speed_of_sound = to_double(k, v); }},
      {"delay_mode",
       [](SimConfig& c, const auto& k, const auto& v) {
         if (v == "nearest") c.scene.delay_mode = DelayMode::nearest;
         else if (v == "fractional") c.scene.delay_mode = DelayMode::fractional;
         else bad(k, v, "expected nearest|fractional");
       }},
      {"model_perturbation",
       [](SimConfig& c, const auto& k, const auto& v) { c.scene.model_perturbation = to_double(k, v); }},
      {"plant",
       [](SimConfig& c, const auto& k, const auto& v) {
         if (v == "slow_variation") c.plant = PlantMode::slow_variation;
         else if (v == "causal") c.plant = PlantMode::causal;
         else bad(k, v, "expected slow_variation|causal");
       }},
      {"signal",
       [](SimConfig& c, const auto& k, const auto& v) {
         if (v == "tone") c.signal.kind = SignalKind::tone;
         else if (v == "bandpass_noise" || v == "broadband") c.signal.kind = SignalKind::bandpass_noise;
         else bad(k, v, "expected tone|bandpass_noise");
       }},
      {"f0", [](SimConfig& c, const auto& k, const auto& v) { c.signal.f0 = to_double(k, v); }},
      {"band_low", [](SimConfig& c, const auto& k, const auto& v) { c.signal.band_low = to_double(k, v); }},
      {"band_high", [](SimConfig& c, const auto& k, const auto& v) { c.signal.band_high = to_double(k, v); }},
      {"amplitude", [](SimConfig& c, const auto& k, const auto& v) { c.signal.amplitude = to_double(k, v); }},
      {"samples", [](SimConfig& c, const auto& k, const auto& v) { c.samples = to_size(k, v); }},
      {"runs", [](SimConfig& c, const auto& k, const auto& v) { c.runs = to_size(k, v); }},
      {"seed", [](SimConfig& c, const auto& k, const auto& v) { c.seed = to_uint(k, v); }},
      {"snr_db", [](SimConfig& c, const auto& k, const auto& v) { c.snr_db = to_double(k, v); }},
      {"algorithms",
       [](SimConfig& c, const auto&, const auto& v) {
         c.algorithms.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) c.algorithms.push_back(parse_algorithm(trim(item)));
       }},
      {"mu_cfxlms", [](SimConfig& c, const auto& k, const auto& v) { c.mu.cfxlms = to_double(k, v); }},
      {"mu_dcfxlms", [](SimConfig& c, const auto& k, const auto& v) { c.mu.dcfxlms = to_double(k, v); }},
      {"mu_mdfxlms", [](SimConfig& c, const auto& k, const auto& v) { c.mu.mdfxlms = to_double(k, v); }},
      {"mu_bdfxlms_bc", [](SimConfig& c, const auto& k, const auto& v) { c.mu.bdfxlms_bc = to_double(k, v); }},
      {"central_norm",
       [](SimConfig& c, const auto& k, const auto& v) {
         if (v == "stacked") c.central_norm = CentralNorm::stacked;
         else if (v == "block") c.central_norm = CentralNorm::block;
         else bad(k, v, "expected stacked|block");
       }},
      {"topology",
       [](SimConfig& c, const auto& k, const auto& v) {
         SimConfig probe = c;
         probe.topology = v;
         try {
           (void)probe.build_topology();
         } catch (const Error& e) {
           bad(k, v, e.what());
         }
         c.topology = v;
       }},
      {"weights",
       [](SimConfig& c, const auto& k, const auto& v) {
         if (v == "metropolis") c.weights = WeightRule::metropolis;
         else if (v == "uniform") c.weights = WeightRule::uniform;
         else if (v == "laplacian") c.weights = WeightRule::laplacian;
         else bad(k, v, "expected metropolis|uniform|laplacian");
       }},
      {"smoothing_window",
       [](SimConfig& c, const auto& k, const auto& v) { c.smoothing_window = to_size(k, v); }},
      {"snapshot_interval",
       [](SimConfig& c, const auto& k, const auto& v) { c.snapshot_interval = to_size(k, v); }},
      {"divergence_tau_db",
       [](SimConfig& c, const auto& k, const auto& v) { c.divergence_tau_db = to_double(k, v); }},
      {"divergence_filter_limit",
       [](SimConfig& c, const auto& k, const auto& v) { c.divergence_filter_limit = to_double(k, v); }},
      {"divergence_window",
       [](SimConfig& c, const auto& k, const auto& v) { c.divergence_window = to_size(k, v); }},
      {"steady_fraction",
       [](SimConfig& c, const auto& k, const auto& v) { c.steady_fraction = to_double(k, v); }},
      {"oracle_samples",
       [](SimConfig& c, const auto& k, const auto& v) { c.oracle_samples = to_size(k, v); }},
      {"workers",
       [](SimConfig& c, const auto& k, const auto& v) { c.workers = static_cast<unsigned>(to_uint(k, v)); }},
  };
  return table;
}

// Presets are stored in the same text format users write.
const std::map<std::string, std::string>& preset_texts() {
  static const std::map<std::string, std::string> presets = {
      {"paper-tone", R"(# 300 Hz tone, 10-node ring, 30 dB sensor SNR
fs = 4000
nodes = 10
mic_radius = 1.0
spk_radius = 1.2
src_distance = 2.0
speed_of_sound = 343
path_taps = 64
delay_mode = nearest
filter_taps = 260
plant = slow_variation
snr_db = 30
topology = ring
weights = metropolis
central_norm = stacked
signal = tone
f0 = 300
samples = 60000
runs = 20
smoothing_window = 10
mu_cfxlms = 2.8
mu_dcfxlms = 1.0
mu_mdfxlms = 1.0
mu_bdfxlms_bc = 1.0
)"},
      {"paper-broadband", R"(# 100-1500 Hz bandpass Gaussian noise, 10-node ring, 30 dB sensor SNR
fs = 4000
nodes = 10
mic_radius = 1.0
spk_radius = 1.2
src_distance = 2.0
speed_of_sound = 343
path_taps = 64
delay_mode = nearest
filter_taps = 260
plant = slow_variation
snr_db = 30
topology = ring
weights = metropolis
central_norm = stacked
signal = bandpass_noise
band_low = 100
band_high = 1500
samples = 120000
runs = 50
smoothing_window = 1
mu_cfxlms = 1.8
mu_dcfxlms = 1.0
mu_mdfxlms = 1.0
mu_bdfxlms_bc = 1.0
)"},
  };
  return presets;
}

}  // namespace

double StepSizes::of(AlgorithmKind kind) const {
  switch (kind) {
    case AlgorithmKind::cfxlms: return cfxlms;
    case AlgorithmKind::dcfxlms: return dcfxlms;
    case AlgorithmKind::mdfxlms: return mdfxlms;
    case AlgorithmKind::bdfxlms_bc: return bdfxlms_bc;
  }
  return 0.0;
}

void StepSizes::set(AlgorithmKind kind, double mu) {
  switch (kind) {
    case AlgorithmKind::cfxlms: cfxlms = mu; break;
    case AlgorithmKind::dcfxlms: dcfxlms = mu; break;
    case AlgorithmKind::mdfxlms: mdfxlms = mu; break;
    case AlgorithmKind::bdfxlms_bc: bdfxlms_bc = mu; break;
  }
}

Topology SimConfig::build_topology() const {
  const std::size_t J = scene.nodes;
  if (topology == "ring") return Topology::ring(J);
  if (topology == "complete") return Topology::complete(J);
  if (topology == "isolated") return Topology::isolated(J);
  const std::string prefix = "edges:";
  if (topology.rfind(prefix, 0) == 0) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::stringstream ss(topology.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto dash = item.find('-');
      if (dash == std::string::npos) throw Error(ErrorCode::ConfigError, "edge '" + item + "' needs a-b");
      const auto a = to_size("topology", trim(item.substr(0, dash)));
      const auto b = to_size("topology", trim(item.substr(dash + 1)));
      if (a == 0 || b == 0) throw Error(ErrorCode::ConfigError, "edge endpoints are 1-based");
      edges.emplace_back(a - 1, b - 1);
    }
    return Topology::from_edges(J, edges);
  }
  throw Error(ErrorCode::ConfigError, "unknown topology '" + topology + "'");
}

void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
  it->second(cfg, key, value);
}

void apply_setting(SimConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "expected key=value, got '" + assignment + "'");
  }
  apply_setting(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void apply_config_text(SimConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_setting(cfg, line);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(SimConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
  apply_config_text(cfg, in);
}

void write_config(std::ostream& os, const SimConfig& c) {
  auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto num = [&](const char* k, double v) { kv(k, format_double(v)); };
  auto cnt = [&](const char* k, std::uint64_t v) { kv(k, std::to_string(v)); };
  num("fs", c.scene.fs);
  cnt("nodes", c.scene.nodes);
  cnt("path_taps", c.scene.taps);
  cnt("filter_taps", c.filter_taps);
  num("mic_radius", c.scene.mic_radius);
  num("spk_radius", c.scene.spk_radius);
  num("src_distance", c.scene.src_distance);
  num("speed_of_sound", c.scene.speed_of_sound);
  kv("delay_mode", to_string(c.scene.delay_mode));
  num("model_perturbation", c.scene.model_perturbation);
  kv("plant", to_string(c.plant));
  kv("signal", to_string(c.signal.kind));
  num("f0", c.signal.f0);
  num("band_low", c.signal.band_low);
  num("band_high", c.signal.band_high);
  num("amplitude", c.signal.amplitude);
  cnt("samples", c.samples);
  cnt("runs", c.runs);
  cnt("seed", c.seed);
  num("snr_db", c.snr_db);
  std::string algs;
  for (auto a : c.algorithms) algs += (algs.empty() ? "" : ",") + to_string(a);
  kv("algorithms", algs);
  num("mu_cfxlms", c.mu.cfxlms);
  num("mu_dcfxlms", c.mu.dcfxlms);
  num("mu_mdfxlms", c.mu.mdfxlms);
  num("mu_bdfxlms_bc", c.mu.bdfxlms_bc);
  kv("central_norm", to_string(c.central_norm));
  kv("topology", c.topology);
  kv("weights", to_string(c.weights));
  cnt("smoothing_window", c.smoothing_window);
  cnt("snapshot_interval", c.snapshot_interval);
  num("divergence_tau_db", c.divergence_tau_db);
  num("divergence_filter_limit", c.divergence_filter_limit);
  cnt("divergence_window", c.divergence_window);
  num("steady_fraction", c.steady_fraction);
  cnt("oracle_samples", c.oracle_samples);
  cnt("workers", c.workers);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : preset_texts()) names.push_back(name);
  return names;
}

SimConfig preset(const std::string& name) {
  const auto& table = preset_texts();
  const auto it = table.find(name == "paper" ? std::string("paper-broadband") : name);
  if (it == table.end()) throw Error(ErrorCode::ConfigError, "unknown preset '" + name + "'");
  SimConfig cfg;
  std::istringstream in(it->second);
  apply_config_text(cfg, in);
  return cfg;
}

std::string to_string(WeightRule rule) {
  switch (rule) {
    case WeightRule::uniform: return "uniform";
    case WeightRule::laplacian: return "laplacian";
    case WeightRule::metropolis: return "metropolis";
  }
  return "unknown";
}

std::string to_string(PlantMode mode) {
  return mode == PlantMode::slow_variation ? "slow_variation" : "causal";
}

std::string to_string(CentralNorm norm) { return norm == CentralNorm::stacked ? "stacked" : "block"; }

std::string to_string(SignalKind kind) { return kind == SignalKind::tone ? "tone" : "bandpass_noise"; }

std::string to_string(DelayMode mode) { return mode == DelayMode::nearest ? "nearest" : "fractional"; }

}  // namespace danc
