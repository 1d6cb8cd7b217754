#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "danc/algorithms.hpp"
#include "danc/network.hpp"

namespace danc {

/// How regressor norms are costed.
///  direct:  ||f||^2 recomputed from the I-sample window every sample (what the
///           library does);
///  sliding: updated recursively, ||f||^2 += f_new^2 - f_old^2 (2 mults, 2 adds).
enum class CountConvention { direct, sliding };

std::string to_string(CountConvention c);

struct LedgerLine {
  std::string item;  // what is being computed
  std::string formula;
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
};

/// Per-sample multiplications and additions for the whole network.
struct OpCount {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
  std::vector<LedgerLine> ledger;
};

struct ComplexityDims {
  std::size_t nodes = 10;       // J
  std::size_t filter_taps = 260;  // I
  std::size_t path_taps = 64;   // H
};

OpCount op_count_model(AlgorithmKind kind, ComplexityDims dims, const Topology& topo,
                       CountConvention convention = CountConvention::direct,
                       CentralNorm central_norm = CentralNorm::stacked);

/// Runs the real implementation for `samples` iterations on random data with
/// counting enabled and returns the tally divided by `samples`. The ledger
/// holds one line per phase.
OpCount instrumented_run(AlgorithmKind kind, ComplexityDims dims, const Topology& topo,
                         std::size_t samples, std::uint64_t seed = 1,
                         CentralNorm central_norm = CentralNorm::stacked);

/// Published per-sample counts for the 10-node array (I = 260, H = 64).
struct ReferenceCount {
  const char* algorithm;
  std::uint64_t mul;
  std::uint64_t add;
};

std::span<const ReferenceCount> reference_counts();

/// Relative deviation (model - ref) / ref.
double relative_deviation(std::uint64_t model, std::uint64_t ref);

}  // namespace danc
