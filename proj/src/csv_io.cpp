#include "danc/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "danc/error.hpp"

namespace danc {
namespace {

std::string num(double v, int digits = 10) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

const AlgorithmResult* find(const ExperimentResult& r, AlgorithmKind kind) {
  for (const auto& a : r.algorithms)
    if (a.kind == kind) return &a;
  return nullptr;
}

bool usable(const AlgorithmResult& a) { return a.averaged_runs > 0 && a.mean_filter.finite(); }

}  // namespace

void write_trace_csv(std::ostream& os, const ExperimentResult& result) {
  os << "iteration,algorithm,tau_db\n";
  for (const auto& a : result.algorithms) {
    const std::string name = label(a.kind);
    for (std::size_t n = 0; n < a.tau_db.size(); ++n) os << n << ',' << name << ',' << num(a.tau_db[n]) << '\n';
  }
}

void write_trace_wide_csv(std::ostream& os, const ExperimentResult& result) {
  os << "iteration";
  std::size_t rows = 0;
  for (const auto& a : result.algorithms) {
    os << ',' << label(a.kind);
    rows = std::max(rows, a.tau_db.size());
  }
  os << '\n';
  for (std::size_t n = 0; n < rows; ++n) {
    os << n;
    for (const auto& a : result.algorithms) os << ',' << (n < a.tau_db.size() ? num(a.tau_db[n]) : "");
    os << '\n';
  }
}

void write_filter_csv(std::ostream& os, const GlobalFilter& w) {
  os << "node,tap,value\n";
  for (std::size_t j = 0; j < w.nodes(); ++j) {
    const auto f = w.filter(j);
    for (std::size_t t = 0; t < f.size(); ++t) os << j + 1 << ',' << t << ',' << num(f[t], 17) << '\n';
  }
}

void write_snapshots_csv(std::ostream& os, const Snapshots& snapshots) {
  os << "iteration,node,tap,value\n";
  for (const auto& [n, w] : snapshots) {
    for (std::size_t j = 0; j < w.nodes(); ++j) {
      const auto f = w.filter(j);
      for (std::size_t t = 0; t < f.size(); ++t) os << n << ',' << j + 1 << ',' << t << ',' << num(f[t], 17) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& os, const ExperimentResult& result, const WienerSolution* oracle) {
  os << "algorithm,mu,steady_tau_db,diverged_runs,runs,consensus_spread,distance_to_cf,distance_to_oracle\n";
  const AlgorithmResult* cf = find(result, AlgorithmKind::cfxlms);
  const bool cf_ok = cf != nullptr && usable(*cf) && cf->mean_filter.max_abs() > 0.0;
  for (const auto& a : result.algorithms) {
    os << label(a.kind) << ',' << num(a.mu) << ',' << num(a.steady_tau_db) << ',' << a.diverged_count() << ','
       << a.diverged.size() << ',';
    const bool ok = usable(a) && a.mean_filter.max_abs() > 0.0;
    if (ok) os << num(consensus_spread(a.mean_filter));
    os << ',';
    if (ok && cf_ok) os << num(relative_distance(a.mean_filter, cf->mean_filter));
    os << ',';
    if (ok && oracle != nullptr) os << num(relative_distance(a.mean_filter, oracle->w_opt));
    os << '\n';
  }
}

namespace {

const ReferenceCount* reference_for(AlgorithmKind kind) {
  for (const auto& r : reference_counts())
    if (label(kind) == r.algorithm) return &r;
  return nullptr;
}

}  // namespace

void write_complexity_csv(std::ostream& os, const std::vector<AlgorithmKind>& kinds, ComplexityDims dims,
                          const Topology& topo, CentralNorm central_norm) {
  os << "algorithm,convention,mul,add,ref_mul,ref_add,dev_mul,dev_add\n";
  for (auto conv : {CountConvention::direct, CountConvention::sliding}) {
    for (auto kind : kinds) {
      const OpCount c = op_count_model(kind, dims, topo, conv, central_norm);
      const ReferenceCount* ref = reference_for(kind);
      os << label(kind) << ',' << to_string(conv) << ',' << c.mul << ',' << c.add << ',';
      if (ref) {
        os << ref->mul << ',' << ref->add << ',' << num(relative_deviation(c.mul, ref->mul), 4) << ','
           << num(relative_deviation(c.add, ref->add), 4);
      } else {
        os << ",,,";
      }
      os << '\n';
    }
  }
}

void write_complexity_text(std::ostream& os, const std::vector<AlgorithmKind>& kinds, ComplexityDims dims,
                           const Topology& topo, CentralNorm central_norm) {
  os << "J=" << dims.nodes << " I=" << dims.filter_taps << " H=" << dims.path_taps
     << " sum|N_j|=" << topo.total_neighborhood_size() << "\n\n";
  os << std::left << std::setw(14) << "algorithm" << std::right << std::setw(10) << "direct x"
     << std::setw(10) << "direct +" << std::setw(11) << "sliding x" << std::setw(11) << "sliding +"
     << std::setw(10) << "ref x" << std::setw(10) << "ref +" << '\n';
  for (auto kind : kinds) {
    const OpCount d = op_count_model(kind, dims, topo, CountConvention::direct, central_norm);
    const OpCount s = op_count_model(kind, dims, topo, CountConvention::sliding, central_norm);
    const ReferenceCount* ref = reference_for(kind);
    os << std::left << std::setw(14) << label(kind) << std::right << std::setw(10) << d.mul << std::setw(10)
       << d.add << std::setw(11) << s.mul << std::setw(11) << s.add;
    if (ref) os << std::setw(10) << ref->mul << std::setw(10) << ref->add;
    os << '\n';
  }
  for (const auto& r : reference_counts()) {
    bool modeled = false;
    for (auto kind : kinds) modeled = modeled || label(kind) == r.algorithm;
    if (!modeled) {
      os << std::left << std::setw(14) << r.algorithm << std::right << std::setw(42) << "" << std::setw(10)
         << r.mul << std::setw(10) << r.add << '\n';
    }
  }
  for (auto kind : kinds) {
    const OpCount d = op_count_model(kind, dims, topo, CountConvention::direct, central_norm);
    os << '\n' << label(kind) << " (direct)\n";
    for (const auto& line : d.ledger) {
      os << "  " << std::left << std::setw(22) << line.item << std::setw(30) << line.formula << std::right
         << std::setw(8) << line.mul << std::setw(8) << line.add << '\n';
    }
  }
}

void write_manifest(std::ostream& os, const std::string& command, const SimConfig& cfg,
                    const std::vector<std::uint64_t>& seeds, const std::vector<std::string>& files,
                    const std::string& timestamp) {
  os << "# written " << timestamp << '\n';
  os << "# command: " << command << '\n';
  write_config(os, cfg);
  os << "# run seeds\n";
  for (std::size_t r = 0; r < seeds.size(); ++r) os << "# run " << r << ' ' << seeds[r] << '\n';
  os << "# files\n";
  for (const auto& f : files) os << "# file " << f << '\n';
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory " + dir.string() + ": " + ec.message());
  std::ofstream os(dir / name, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + (dir / name).string() + " for writing");
  return os;
}

}  // namespace danc
