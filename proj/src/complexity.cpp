#include "danc/complexity.hpp"

#include <array>
#include <random>

#include "danc/acoustics.hpp"
#include "danc/filtered_ref.hpp"

namespace danc {

std::string to_string(CountConvention c) {
  return c == CountConvention::direct ? "direct" : "sliding";
}

namespace {

using u64 = std::uint64_t;

struct LedgerBuilder {
  OpCount out;
  void add(std::string item, std::string formula, u64 mul, u64 add) {
    out.mul += mul;
    out.add += add;
    out.ledger.push_back({std::move(item), std::move(formula), mul, add});
  }
};

u64 support_size(AlgorithmKind kind, const Topology& topo) {
  const u64 J = topo.nodes();
  switch (kind) {
    case AlgorithmKind::cfxlms: return J * J;
    case AlgorithmKind::dcfxlms:
    case AlgorithmKind::mdfxlms: return J;
    case AlgorithmKind::bdfxlms_bc: return topo.total_neighborhood_size();
  }
  return 0;
}

}  // namespace

OpCount op_count_model(AlgorithmKind kind, ComplexityDims dims, const Topology& topo,
                       CountConvention convention, CentralNorm central_norm) {
  const u64 J = dims.nodes, I = dims.filter_taps, H = dims.path_taps;
  const u64 P = support_size(kind, topo);
  const u64 N = topo.total_neighborhood_size();
  LedgerBuilder b;

  b.add("control output", "J*I | J*(I-1)", J * I, J * (I - 1));
  b.add("filtered reference", "P*H | P*(H-1)", P * H, P * (H - 1));
  if (convention == CountConvention::direct) {
    b.add("regressor norms", "P*I | P*(I-1)", P * I, P * (I - 1));
  } else {
    b.add("regressor norms (recursive)", "2P | 2P", 2 * P, 2 * P);
  }

  switch (kind) {
    case AlgorithmKind::cfxlms:
      if (central_norm == CentralNorm::stacked) {
        b.add("step coefficients", "2J | J^2", 2 * J, J * J);
      } else {
        b.add("step coefficients", "J + J^2 | J^2", J + J * J, J * J);
      }
      b.add("gradient update", "J^2*I | J^2*I", J * J * I, J * J * I);
      break;
    case AlgorithmKind::dcfxlms:
    case AlgorithmKind::mdfxlms:
      b.add("step coefficients", "2J | J", 2 * J, J);
      b.add("gradient update", "J*I | J*I", J * I, J * I);
      break;
    case AlgorithmKind::bdfxlms_bc:
      b.add("step coefficients", "2J | sum|N_j|", 2 * J, N);
      b.add("gradient update", "sum|N_j|*I | sum|N_j|*I", N * I, N * I);
      break;
  }

  if (kind == AlgorithmKind::mdfxlms || kind == AlgorithmKind::bdfxlms_bc) {
    b.add("combination", "sum|N_j|*I | (sum|N_j|-J)*I", N * I, (N - J) * I);
  }
  return b.out;
}

OpCount instrumented_run(AlgorithmKind kind, ComplexityDims dims, const Topology& topo,
                         std::size_t samples, std::uint64_t seed, CentralNorm central_norm) {
  const std::size_t J = dims.nodes, I = dims.filter_taps, H = dims.path_taps;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<std::vector<ImpulseResponse>> paths(J, std::vector<ImpulseResponse>(J));
  for (auto& row : paths) {
    for (auto& ir : row) {
      ir.fs = 1.0;
      ir.coeffs.resize(H);
      for (auto& c : ir.coeffs) c = 0.1 * gauss(rng);
    }
  }
  FilteredRefBank bank(paths, I, required_pairs(kind, topo));
  Controller ctl(kind, {J, I}, 0.05, topo, combination_weights(topo, WeightRule::metropolis),
                 central_norm);
  DelayLine x_line(I);
  std::vector<double> y(J), e(J);

  PhaseTally tally;
  for (std::size_t n = 0; n < samples; ++n) {
    const double x = gauss(rng);
    x_line.push(x);
    bank.step(x, &tally.filtered_ref, &tally.normalization);
    ctl.output(x_line.window(), y, &tally.filtering);
    for (auto& v : e) v = 0.01 * gauss(rng);
    ctl.adapt(e, bank, &tally);
  }

  OpCount out;
  if (samples == 0) return out;
  const auto per = [&](const OpTally& t) { return std::pair<u64, u64>{t.mul / samples, t.add / samples}; };
  const std::array<std::pair<const char*, const OpTally*>, 5> phases{{
      {"control output", &tally.filtering},
      {"filtered reference", &tally.filtered_ref},
      {"regressor norms", &tally.normalization},
      {"adaptation", &tally.adaptation},
      {"combination", &tally.combination},
  }};
  for (const auto& [name, t] : phases) {
    const auto [m, a] = per(*t);
    out.ledger.push_back({name, "measured", m, a});
  }
  const OpTally total = tally.total();
  out.mul = total.mul / samples;
  out.add = total.add / samples;
  return out;
}

std::span<const ReferenceCount> reference_counts() {
  static constexpr std::array<ReferenceCount, 5> table{{
      {"CFxLMS", 63600, 60790},
      {"DCFxLMS", 8450, 8410},
      {"MDFxLMS", 17290, 14650},
      {"MDFxLMS-VSR", 23628, 20940},
      {"BDFxLMS-BC", 22466, 19812},
  }};
  return table;
}

double relative_deviation(std::uint64_t model, std::uint64_t ref) {
  return (static_cast<double>(model) - static_cast<double>(ref)) / static_cast<double>(ref);
}

}  // namespace danc
