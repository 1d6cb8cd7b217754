#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace danc {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

enum class DelayMode { nearest, fractional };

/// Half-width (in taps) of the windowed-sinc fractional delay interpolator.
inline constexpr std::size_t kInterpolatorHalfWidth = 10;

struct ImpulseResponse {
  std::vector<double> coeffs;
  double fs = 0.0;

  std::size_t size() const { return coeffs.size(); }
};

/// Point-source free-field response 1/(4 pi r) delayed by r*fs/c, sampled as an FIR.
/// `nearest` puts the whole gain on the rounded-delay tap; `fractional` spreads it
/// over a 21-tap Hann-windowed sinc centred on the exact delay, scaled so the
/// response energy is (1/(4 pi r))^2.
ImpulseResponse free_field_ir(const Vec3& src, const Vec3& rcv, double fs,
                              std::size_t length, double c = 343.0,
                              DelayMode mode = DelayMode::nearest);

struct ArrayGeometry {
  std::vector<Vec3> mics;
  std::vector<Vec3> speakers;
  Vec3 source;

  std::size_t nodes() const { return mics.size(); }
};

/// Acoustic paths of the plant. secondary[j][k] runs from speaker k to mic j.
struct PathSet {
  std::vector<ImpulseResponse> primary;
  std::vector<std::vector<ImpulseResponse>> secondary;
  std::vector<std::vector<ImpulseResponse>> secondary_model;

  std::size_t nodes() const { return primary.size(); }
  std::size_t taps() const { return primary.empty() ? 0 : primary.front().size(); }
};

struct SceneParams {
  std::size_t nodes = 10;
  double mic_radius = 1.0;
  double spk_radius = 1.2;
  double src_distance = 2.0;
  double fs = 4000.0;
  std::size_t taps = 64;
  double speed_of_sound = 343.0;
  DelayMode delay_mode = DelayMode::nearest;
  // Relative std-dev of a multiplicative perturbation applied to every
  // secondary-model coefficient; 0 means a perfect model.
  double model_perturbation = 0.0;
  std::uint64_t perturbation_seed = 0;
};

struct Scene {
  ArrayGeometry geometry;
  PathSet paths;
};

/// Circular arrays with node j at angle 2*pi*j/J (mic and speaker co-angular),
/// source on the +x axis.
Scene build_scene(const SceneParams& params);

/// Flat CSV dumps: geometry rows (role,node,x,y,z) and path rows
/// (path,j,k,tap,value) with 1-based node indices; primary rows use k=0.
void write_geometry_csv(std::ostream& os, const ArrayGeometry& geometry);
void write_paths_csv(std::ostream& os, const PathSet& paths);

enum class SignalKind { tone, bandpass_noise };

struct SignalSpec {
  SignalKind kind = SignalKind::tone;
  double f0 = 300.0;
  double band_low = 100.0;
  double band_high = 1500.0;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
};

/// Length of the linear-phase bandpass used for the broadband reference.
inline constexpr std::size_t kBandpassTaps = 257;

/// Hamming-windowed-sinc bandpass FIR with cutoffs in Hz.
std::vector<double> design_bandpass(double low, double high, double fs,
                                    std::size_t taps = kBandpassTaps);

/// Tone: amplitude*sin(2 pi f0 n / fs). Bandpass noise: seeded white Gaussian
/// through design_bandpass, rescaled to variance amplitude^2 over the N samples.
std::vector<double> gen_signal(const SignalSpec& spec, double fs, std::size_t n);

/// Fixed-length FIR delay line; window() is newest-first and always contiguous.
class DelayLine {
 public:
  DelayLine() = default;
  explicit DelayLine(std::size_t length) : length_(length), pos_(0), buf_(2 * length, 0.0) {}

  void push(double x) {
    pos_ = (pos_ == 0 ? length_ : pos_) - 1;
    buf_[pos_] = x;
    buf_[pos_ + length_] = x;
  }

  std::span<const double> window() const { return {buf_.data() + pos_, length_}; }
  std::size_t size() const { return length_; }
  void reset() { std::fill(buf_.begin(), buf_.end(), 0.0); }

 private:
  std::size_t length_ = 0;
  std::size_t pos_ = 0;
  std::vector<double> buf_;
};

/// Streaming convolution with a fixed impulse response.
class Convolver {
 public:
  Convolver() = default;
  explicit Convolver(std::vector<double> coeffs)
      : coeffs_(std::move(coeffs)), line_(coeffs_.size()) {}
  explicit Convolver(const ImpulseResponse& ir) : Convolver(ir.coeffs) {}

  /// Pushes x(n) and returns sum_i coeffs[i] * x(n - i).
  double step(double x);

  std::size_t taps() const { return coeffs_.size(); }
  void reset() { line_.reset(); }

 private:
  std::vector<double> coeffs_;
  DelayLine line_;
};

/// Full linear convolution truncated to the input length.
std::vector<double> convolve(std::span<const double> x, std::span<const double> h);

/// White Gaussian sensor noise with a fixed variance; deterministic per seed.
class NoiseSource {
 public:
  NoiseSource(double variance, std::uint64_t seed)
      : stddev_(std::sqrt(variance)), rng_(seed) {}

  double next() { return stddev_ * normal_(rng_); }

 private:
  double stddev_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Noise variance reference_power * 10^(-snr_db/10); snr_db = +inf disables it.
double sensor_noise_variance(double snr_db, double reference_power);

std::vector<double> add_sensor_noise(std::span<const double> signal, double snr_db,
                                     double reference_power, std::uint64_t seed);

inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

}  // namespace danc
