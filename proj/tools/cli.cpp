#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "danc/acoustics.hpp"
#include "danc/complexity.hpp"
#include "danc/config.hpp"
#include "danc/csv_io.hpp"
#include "danc/error.hpp"
#include "danc/harness.hpp"
#include "danc/wiener.hpp"

namespace danc::cli {
namespace {

struct Common {
  std::string preset;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> samples;
  std::optional<unsigned> workers;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--preset", c.preset, "Named preset (paper-tone, paper-broadband)");
  sub->add_option("--config", c.config, "key = value configuration file");
  sub->add_option("--out", c.out, std::string("Output directory (default: $") + kOutDirEnv + " or ./out)");
  sub->add_option("--seed", c.seed, "Base seed");
  sub->add_option("--runs", c.runs, "Monte Carlo runs");
  sub->add_option("--samples", c.samples, "Samples per run");
  sub->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
  sub->add_option("--set", c.sets, "Override any configuration key, key=value")->take_all();
}

SimConfig resolve(const Common& c) {
  SimConfig cfg = c.preset.empty() ? SimConfig{} : preset(c.preset);
  if (!c.config.empty()) apply_config_file(cfg, c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.runs) cfg.runs = *c.runs;
  if (c.samples) cfg.samples = *c.samples;
  if (c.workers) cfg.workers = *c.workers;
  for (const auto& s : c.sets) apply_setting(cfg, s);
  return cfg;
}

std::filesystem::path out_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "out";
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

template <class Fn>
void emit(const std::filesystem::path& dir, const std::string& name, std::vector<std::string>& files, Fn&& fn) {
  auto os = open_output(dir, name);
  fn(os);
  os.close();
  if (!os) throw Error(ErrorCode::IoError, "failed writing " + (dir / name).string());
  files.push_back(name);
}

void finish(const std::filesystem::path& dir, const std::string& command, const SimConfig& cfg,
            const std::vector<std::uint64_t>& seeds, std::vector<std::string>& files, std::ostream& out) {
  auto os = open_output(dir, "manifest.txt");
  write_manifest(os, command, cfg, seeds, files, timestamp());
  out << "wrote";
  for (const auto& f : files) out << ' ' << (dir / f).string();
  out << ' ' << (dir / "manifest.txt").string() << '\n';
}

void report(const ExperimentResult& result, std::ostream& out) {
  for (const auto& a : result.algorithms) {
    out << std::left << std::setw(12) << label(a.kind) << " mu=" << a.mu << "  steady tau "
        << std::fixed << std::setprecision(2) << a.steady_tau_db << " dB  diverged "
        << a.diverged_count() << '/' << a.diverged.size() << '\n';
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6);
  }
}

int experiment(const std::string& command, SimConfig cfg, const Common& c, std::ostream& out) {
  const auto dir = out_dir(c);
  const ExperimentResult result = run_experiment(cfg);
  std::vector<std::string> files;
  emit(dir, "trace.csv", files, [&](std::ostream& os) { write_trace_csv(os, result); });
  emit(dir, "trace_wide.csv", files, [&](std::ostream& os) { write_trace_wide_csv(os, result); });
  emit(dir, "summary.csv", files, [&](std::ostream& os) { write_summary_csv(os, result); });
  for (const auto& a : result.algorithms) {
    const std::string tag = to_string(a.kind);
    if (a.averaged_runs > 0) {
      emit(dir, "filter_" + tag + ".csv", files, [&](std::ostream& os) { write_filter_csv(os, a.mean_filter); });
    }
    if (!a.snapshots.empty()) {
      emit(dir, "snapshots_" + tag + ".csv", files, [&](std::ostream& os) { write_snapshots_csv(os, a.snapshots); });
    }
  }
  report(result, out);
  finish(dir, command, cfg, result.run_seeds, files, out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed active noise control simulator"};
  app.require_subcommand(1);
  Common c;

  std::string algorithm;
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm");
  add_common(run_cmd, c);
  run_cmd->add_option("--algorithm,-a", algorithm, "cfxlms | dcfxlms | mdfxlms | bdfxlms_bc")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Run all four algorithms on shared realizations");
  add_common(compare_cmd, c);

  std::string format = "text";
  auto* complexity_cmd = app.add_subcommand("complexity", "Per-sample operation counts against the reference table");
  add_common(complexity_cmd, c);
  complexity_cmd->add_option("--format", format, "text | csv")->check(CLI::IsMember({"text", "csv"}));

  auto* oracle_cmd = app.add_subcommand("oracle", "Solve for the least-squares optimal global filter");
  add_common(oracle_cmd, c);

  auto* scene_cmd = app.add_subcommand("scene-dump", "Write geometry, impulse responses and network weights");
  add_common(scene_cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) err << app.help();
    return code;
  }

  std::ostringstream cmdline;
  for (int i = 0; i < argc; ++i) cmdline << (i ? " " : "") << argv[i];

  try {
    SimConfig cfg = resolve(c);
    if (run_cmd->parsed()) {
      cfg.algorithms = {parse_algorithm(algorithm)};
      return experiment(cmdline.str(), cfg, c, out);
    }
    if (compare_cmd->parsed()) {
      cfg.algorithms = {AlgorithmKind::cfxlms, AlgorithmKind::dcfxlms, AlgorithmKind::mdfxlms,
                        AlgorithmKind::bdfxlms_bc};
      return experiment(cmdline.str(), cfg, c, out);
    }
    if (complexity_cmd->parsed()) {
      const Scene scene = build_scene(cfg.scene);
      const ComplexityDims dims{cfg.scene.nodes, cfg.filter_taps, scene.paths.taps()};
      const std::vector<AlgorithmKind> kinds{AlgorithmKind::cfxlms, AlgorithmKind::dcfxlms,
                                             AlgorithmKind::mdfxlms, AlgorithmKind::bdfxlms_bc};
      if (format == "csv") {
        write_complexity_csv(out, kinds, dims, cfg.build_topology(), cfg.central_norm);
      } else {
        write_complexity_text(out, kinds, dims, cfg.build_topology(), cfg.central_norm);
      }
      return 0;
    }
    if (oracle_cmd->parsed()) {
      const auto dir = out_dir(c);
      const WienerSolution sol = experiment_oracle(cfg);
      std::vector<std::string> files;
      emit(dir, "oracle_filter.csv", files, [&](std::ostream& os) { write_filter_csv(os, sol.w_opt); });
      emit(dir, "oracle_power.csv", files, [&](std::ostream& os) {
        os << "node,residual_power,disturbance_power\n";
        os << std::setprecision(10);
        for (std::size_t j = 0; j < sol.residual_power.size(); ++j) {
          os << j + 1 << ',' << sol.residual_power[j] << ',' << sol.disturbance_power[j] << '\n';
        }
      });
      double e = 0.0, d = 0.0;
      for (std::size_t j = 0; j < sol.residual_power.size(); ++j) {
        e += sol.residual_power[j];
        d += sol.disturbance_power[j];
      }
      out << "oracle residual " << 10.0 * std::log10(e / d) << " dB, normal-equation residual "
          << sol.normal_residual << (sol.regularized ? " (regularized)" : "") << '\n';
      finish(dir, cmdline.str(), cfg, {}, files, out);
      return 0;
    }
    if (scene_cmd->parsed()) {
      const auto dir = out_dir(c);
      const Scene scene = build_scene(cfg.scene);
      const Topology topo = cfg.build_topology();
      std::vector<std::string> files;
      emit(dir, "geometry.csv", files, [&](std::ostream& os) { write_geometry_csv(os, scene.geometry); });
      emit(dir, "paths.csv", files, [&](std::ostream& os) { write_paths_csv(os, scene.paths); });
      emit(dir, "edges.csv", files, [&](std::ostream& os) {
        write_edge_list_csv(os, topo, combination_weights(topo, cfg.weights));
      });
      finish(dir, cmdline.str(), cfg, {}, files, out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace danc::cli
