#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "danc/complexity.hpp"
#include "danc/harness.hpp"
#include "danc/wiener.hpp"

namespace danc {

// All writers emit comma-separated text with a header row and LF endings.
// Node indices are 1-based, tap indices 0-based.

/// iteration,algorithm,tau_db (one row per iteration and algorithm).
void write_trace_csv(std::ostream& os, const ExperimentResult& result);

/// iteration,<label 1>,<label 2>,... (one column per algorithm).
void write_trace_wide_csv(std::ostream& os, const ExperimentResult& result);

/// node,tap,value
void write_filter_csv(std::ostream& os, const GlobalFilter& w);

/// iteration,node,tap,value
void write_snapshots_csv(std::ostream& os, const Snapshots& snapshots);

/// One row per algorithm: step, steady tau, divergence count, consensus
/// spread and distances to the centralized filter and to the oracle (when
/// available; empty cells otherwise).
void write_summary_csv(std::ostream& os, const ExperimentResult& result,
                       const WienerSolution* oracle = nullptr);

/// algorithm,convention,mul,add,ref_mul,ref_add,dev_mul,dev_add
void write_complexity_csv(std::ostream& os, const std::vector<AlgorithmKind>& kinds,
                          ComplexityDims dims, const Topology& topo, CentralNorm central_norm);

/// Human-readable version of the same table followed by the ledgers.
void write_complexity_text(std::ostream& os, const std::vector<AlgorithmKind>& kinds,
                           ComplexityDims dims, const Topology& topo, CentralNorm central_norm);

/// Plain-text manifest: the full configuration in the config-file format,
/// the run seeds and the list of files written. The timestamp sits alone on
/// the first line so the rest of the file is reproducible byte for byte.
void write_manifest(std::ostream& os, const std::string& command, const SimConfig& cfg,
                    const std::vector<std::uint64_t>& seeds, const std::vector<std::string>& files,
                    const std::string& timestamp);

/// Opens `dir / name` for writing, creating `dir` if needed; throws IoError.
std::ofstream open_output(const std::filesystem::path& dir, const std::string& name);

}  // namespace danc
