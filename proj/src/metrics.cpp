#include "danc/metrics.hpp"

#include <cmath>
#include <limits>

#include "danc/error.hpp"

namespace danc {

PowerTrace& PowerTrace::operator+=(const PowerTrace& o) {
  if (o.size() != size()) throw Error(ErrorCode::DimensionMismatch, "power traces differ in length");
  for (std::size_t n = 0; n < size(); ++n) {
    residual[n] += o.residual[n];
    disturbance[n] += o.disturbance[n];
  }
  return *this;
}

std::vector<double> normalized_residual_db(const PowerTrace& power, std::size_t window) {
  const std::size_t N = power.size();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> ratio(N, nan);
  for (std::size_t n = 0; n < N; ++n) {
    if (power.disturbance[n] > 0.0) ratio[n] = power.residual[n] / power.disturbance[n];
  }
  std::vector<double> out(N, nan);
  if (window <= 1) {
    for (std::size_t n = 0; n < N; ++n) out[n] = 10.0 * std::log10(ratio[n]);
    return out;
  }
  // Centred window [n - w/2, n + (w-1)/2], clipped at the ends; gaps are skipped.
  const std::size_t before = window / 2, after = (window - 1) / 2;
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t lo = n >= before ? n - before : 0;
    const std::size_t hi = std::min(N - 1, n + after);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t m = lo; m <= hi; ++m) {
      if (!std::isnan(ratio[m])) {
        sum += ratio[m];
        ++count;
      }
    }
    if (count > 0) out[n] = 10.0 * std::log10(sum / static_cast<double>(count));
  }
  return out;
}

std::vector<double> residual_trace(const std::vector<std::vector<std::vector<double>>>& e_runs,
                                   const std::vector<std::vector<std::vector<double>>>& d_runs,
                                   std::size_t window) {
  if (e_runs.size() != d_runs.size() || e_runs.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "need matching, non-empty e and d runs");
  }
  PowerTrace total;
  total.resize(e_runs.front().size());
  for (std::size_t r = 0; r < e_runs.size(); ++r) {
    if (e_runs[r].size() != total.size() || d_runs[r].size() != total.size()) {
      throw Error(ErrorCode::DimensionMismatch, "runs differ in length");
    }
    for (std::size_t n = 0; n < total.size(); ++n) {
      for (double v : e_runs[r][n]) total.residual[n] += v * v;
      for (double v : d_runs[r][n]) total.disturbance[n] += v * v;
    }
  }
  return normalized_residual_db(total, window);
}

double steady_state_db(std::span<const double> tau_db, double fraction) {
  const std::size_t N = tau_db.size();
  const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * N)));
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t n = N - std::min(N, tail); n < N; ++n) {
    if (std::isfinite(tau_db[n])) {
      sum += tau_db[n];
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

namespace {

double norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

double consensus_spread(const GlobalFilter& w) {
  const std::size_t J = w.nodes();
  double mean = 0.0;
  for (std::size_t j = 0; j < J; ++j) mean += norm(w.filter(j));
  mean /= static_cast<double>(J);
  double worst = 0.0;
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t k = j + 1; k < J; ++k) worst = std::max(worst, distance(w.filter(j), w.filter(k)));
  if (worst == 0.0) return 0.0;
  if (mean == 0.0) throw Error(ErrorCode::ZeroReference, "all node filters are zero");
  return worst / mean;
}

double relative_distance(const GlobalFilter& w, const GlobalFilter& ref) {
  if (w.nodes() != ref.nodes() || w.taps() != ref.taps()) {
    throw Error(ErrorCode::DimensionMismatch, "filters differ in shape");
  }
  const double r = norm(ref.data());
  if (r == 0.0) throw Error(ErrorCode::ZeroReference, "reference filter is zero");
  return distance(w.data(), ref.data()) / r;
}

std::vector<FilterDiagnostics> filter_metrics(
    const std::vector<std::pair<std::size_t, GlobalFilter>>& snapshots, const GlobalFilter& ref) {
  std::vector<FilterDiagnostics> out;
  for (const auto& [iteration, w] : snapshots) {
    out.push_back({iteration, consensus_spread(w), relative_distance(w, ref)});
  }
  return out;
}

}  // namespace danc
