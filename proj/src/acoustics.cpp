#include "danc/acoustics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "danc/error.hpp"
#include "danc/kernels.hpp"

namespace danc {
namespace {

double sinc(double t) {
  if (t == 0.0) return 1.0;
  const double a = std::numbers::pi * t;
  return std::sin(a) / a;
}

// Hann taper over |t| <= half_width + 1, so the outermost taps stay nonzero.
double hann(double t, double half_width) {
  return 0.5 * (1.0 + std::cos(std::numbers::pi * t / (half_width + 1.0)));
}

std::string describe(double r, double delay, std::size_t length) {
  std::ostringstream os;
  os << "distance " << r << " m gives delay " << delay << " samples for a "
     << length << "-tap response";
  return os.str();
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

ImpulseResponse free_field_ir(const Vec3& src, const Vec3& rcv, double fs,
                              std::size_t length, double c, DelayMode mode) {
  const double r = distance(src, rcv);
  if (!(r > 0.0)) {
    throw Error(ErrorCode::ZeroDistance, "source and receiver coincide");
  }
  const double gain = 1.0 / (4.0 * std::numbers::pi * r);
  const double delay = r * fs / c;

  ImpulseResponse ir{std::vector<double>(length, 0.0), fs};
  if (mode == DelayMode::nearest) {
    const auto tap = static_cast<std::size_t>(std::llround(delay));
    if (tap >= length) throw Error(ErrorCode::TruncatedPath, describe(r, delay, length));
    ir.coeffs[tap] = gain;
    return ir;
  }

  const double half = static_cast<double>(kInterpolatorHalfWidth);
  if (delay >= static_cast<double>(length) - half) {
    throw Error(ErrorCode::TruncatedPath, describe(r, delay, length));
  }
  const long centre = std::lround(delay);
  const long lo = std::max(0L, centre - static_cast<long>(kInterpolatorHalfWidth));
  const long hi = std::min(static_cast<long>(length) - 1,
                           centre + static_cast<long>(kInterpolatorHalfWidth));
  double energy = 0.0;
  for (long n = lo; n <= hi; ++n) {
    const double t = static_cast<double>(n) - delay;
    const double v = sinc(t) * hann(t, half);
    ir.coeffs[static_cast<std::size_t>(n)] = v;
    energy += v * v;
  }
  const double norm = gain / std::sqrt(energy);
  for (auto& v : ir.coeffs) v *= norm;
  return ir;
}

Scene build_scene(const SceneParams& p) {
  if (p.nodes == 0) throw Error(ErrorCode::DimensionMismatch, "scene needs at least one node");
  Scene scene;
  auto& g = scene.geometry;
  g.source = {p.src_distance, 0.0, 0.0};
  for (std::size_t j = 0; j < p.nodes; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(p.nodes);
    const double cs = std::cos(angle), sn = std::sin(angle);
    g.mics.push_back({p.mic_radius * cs, p.mic_radius * sn, 0.0});
    g.speakers.push_back({p.spk_radius * cs, p.spk_radius * sn, 0.0});
  }

  auto& paths = scene.paths;
  const std::size_t J = p.nodes;
  for (std::size_t j = 0; j < J; ++j) {
    paths.primary.push_back(
        free_field_ir(g.source, g.mics[j], p.fs, p.taps, p.speed_of_sound, p.delay_mode));
  }
  paths.secondary.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t k = 0; k < J; ++k) {
      paths.secondary[j].push_back(free_field_ir(g.speakers[k], g.mics[j], p.fs, p.taps,
                                                 p.speed_of_sound, p.delay_mode));
    }
  }
  paths.secondary_model = paths.secondary;
  if (p.model_perturbation > 0.0) {
    std::mt19937_64 rng(p.perturbation_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& row : paths.secondary_model) {
      for (auto& ir : row) {
        for (auto& v : ir.coeffs) v *= 1.0 + p.model_perturbation * normal(rng);
      }
    }
  }
  return scene;
}

void write_geometry_csv(std::ostream& os, const ArrayGeometry& g) {
  os << "role,node,x,y,z\n";
  os.precision(17);
  auto row = [&](const char* role, std::size_t node, const Vec3& v) {
    os << role << ',' << node << ',' << v.x << ',' << v.y << ',' << v.z << '\n';
  };
  row("source", 0, g.source);
  for (std::size_t j = 0; j < g.mics.size(); ++j) row("mic", j + 1, g.mics[j]);
  for (std::size_t j = 0; j < g.speakers.size(); ++j) row("speaker", j + 1, g.speakers[j]);
}

void write_paths_csv(std::ostream& os, const PathSet& paths) {
  os << "path,j,k,tap,value\n";
  os.precision(17);
  auto dump = [&](const char* name, std::size_t j, std::size_t k, const ImpulseResponse& ir) {
    for (std::size_t t = 0; t < ir.size(); ++t) {
      os << name << ',' << j << ',' << k << ',' << t << ',' << ir.coeffs[t] << '\n';
    }
  };
  const std::size_t J = paths.nodes();
  for (std::size_t j = 0; j < J; ++j) dump("primary", j + 1, 0, paths.primary[j]);
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t k = 0; k < J; ++k) dump("secondary", j + 1, k + 1, paths.secondary[j][k]);
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t k = 0; k < J; ++k)
      dump("secondary_model", j + 1, k + 1, paths.secondary_model[j][k]);
}

std::vector<double> design_bandpass(double low, double high, double fs, std::size_t taps) {
  if (!(low > 0.0 && low < high && high < fs / 2.0)) {
    std::ostringstream os;
    os << "band [" << low << ", " << high << "] Hz must satisfy 0 < low < high < fs/2 = "
       << fs / 2.0;
    throw Error(ErrorCode::InvalidBand, os.str());
  }
  if (taps == 0 || taps % 2 == 0) {
    throw Error(ErrorCode::InvalidBand, "bandpass length must be odd for linear phase");
  }
  const double fl = low / fs, fh = high / fs;
  const double mid = static_cast<double>(taps - 1) / 2.0;
  std::vector<double> h(taps);
  for (std::size_t n = 0; n < taps; ++n) {
    const double m = static_cast<double>(n) - mid;
    const double ideal = 2.0 * fh * sinc(2.0 * fh * m) - 2.0 * fl * sinc(2.0 * fl * m);
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                               static_cast<double>(taps - 1));
    h[n] = ideal * window;
  }
  return h;
}

std::vector<double> gen_signal(const SignalSpec& spec, double fs, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "signal length must be positive");
  std::vector<double> x(n);
  if (spec.kind == SignalKind::tone) {
    if (!(spec.f0 > 0.0 && spec.f0 < fs / 2.0)) {
      throw Error(ErrorCode::InvalidBand, "tone frequency must lie in (0, fs/2)");
    }
    const double omega = 2.0 * std::numbers::pi * spec.f0 / fs;
    for (std::size_t i = 0; i < n; ++i) x[i] = spec.amplitude * std::sin(omega * static_cast<double>(i));
    return x;
  }

  const auto h = design_bandpass(spec.band_low, spec.band_high, fs);
  // Discard the filter's start-up transient so the output is stationary from n = 0.
  const std::size_t warm = h.size() - 1;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> white(n + warm);
  for (auto& v : white) v = normal(rng);
  const auto filtered = convolve(white, h);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += filtered[i + warm];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = filtered[i + warm] - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);
  const double scale = spec.amplitude / std::sqrt(var);
  for (std::size_t i = 0; i < n; ++i) x[i] = filtered[i + warm] * scale;
  return x;
}

double Convolver::step(double x) {
  line_.push(x);
  return kernels::dot(coeffs_, line_.window());
}

std::vector<double> convolve(std::span<const double> x, std::span<const double> h) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const std::size_t m = std::min(h.size(), n + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += h[i] * x[n - i];
    y[n] = acc;
  }
  return y;
}

double sensor_noise_variance(double snr_db, double reference_power) {
  if (!(reference_power > 0.0)) {
    throw Error(ErrorCode::NonPositivePower, "sensor-noise reference power must be positive");
  }
  if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
  return reference_power * std::pow(10.0, -snr_db / 10.0);
}

std::vector<double> add_sensor_noise(std::span<const double> signal, double snr_db,
                                     double reference_power, std::uint64_t seed) {
  const double variance = sensor_noise_variance(snr_db, reference_power);
  std::vector<double> out(signal.begin(), signal.end());
  if (variance == 0.0) return out;
  NoiseSource noise(variance, seed);
  for (auto& v : out) v += noise.next();
  return out;
}

}  // namespace danc
