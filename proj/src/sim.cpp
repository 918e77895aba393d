// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/FFT>

#include "soundfield/error.hpp"
#include "soundfield/parallel.hpp"
#include "soundfield/timewarp.hpp"

namespace soundfield {

namespace {

constexpr double kMinDistance = 1e-3;
constexpr int kSincHalfWidth = 32;

double WindowedSincRead(std::span<const double> x, double u) {
  const double base = std::floor(u);
  const double frac = u - base;
  const auto n = static_cast<long>(x.size());
  const auto i0 = static_cast<long>(base);
  double acc = 0.0;
  for (int k = -kSincHalfWidth + 1; k <= kSincHalfWidth; ++k) {
    const long idx = i0 + k;
    if (idx < 0 || idx >= n) continue;
    const double arg = static_cast<double>(k) - frac;
    const double sinc =
        arg == 0.0 ? 1.0
                   : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
    const double phase = std::numbers::pi * arg / kSincHalfWidth;
    const double w = 0.42 + 0.5 * std::cos(phase) + 0.08 * std::cos(2.0 * phase);
    acc += x[static_cast<std::size_t>(idx)] * sinc * w;
  }
  return acc;
}

}  // namespace

SimSource SimSource::Static(AudioBuffer signal, const Vec3& pos) {
  SimSource s;
  s.signal = std::move(signal);
  s.track = {pos};
  return s;
}

double SimScene::sample_rate() const {
  return sources.empty() ? kDefaultSampleRate : sources.front().signal.sample_rate;
}

std::size_t SimScene::num_samples() const {
  std::size_t n = 0;
  for (const auto& s : sources) n = std::max(n, s.signal.num_samples());
  return n;
}

void SimScene::Validate() const {
  if (sources.empty()) throw InvalidArgument("scene has no sources");
  if (!(v_sound > 0.0)) throw InvalidArgument("speed of sound must be positive");
  if (!(reference_distance > 0.0))
    throw InvalidArgument("reference distance must be positive");
  for (const auto& s : sources) {
    s.signal.Validate();
    if (s.signal.num_channels() != 1)
      throw InvalidArgument("source signals must be mono");
    if (s.signal.sample_rate != sample_rate())
      throw InvalidArgument("source signals must share one sample rate");
    if (s.track.empty()) throw InvalidArgument("source has no position");
    if (!(s.fps > 0.0)) throw InvalidArgument("source track fps must be positive");
    for (const auto& p : s.track)
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw InvalidArgument("source position must be finite");
  }
}

double FractionalRead(std::span<const double> x, double u, DelayInterp interp) {
  if (x.empty()) return 0.0;
  const double last = static_cast<double>(x.size() - 1);
  if (interp == DelayInterp::kWindowedSinc) {
    if (u < -kSincHalfWidth || u > last + kSincHalfWidth) return 0.0;
    return WindowedSincRead(x, u);
  }
  if (u <= -1.0 || u >= last + 1.0) return 0.0;
  const double lo = std::floor(u);
  const double frac = u - lo;
  const auto i = static_cast<long>(lo);
  const auto at = [&](long k) {
    return k < 0 || k > static_cast<long>(last) ? 0.0
                                                : x[static_cast<std::size_t>(k)];
  };
  return frac == 0.0 ? at(i) : (1.0 - frac) * at(i) + frac * at(i + 1);
}

AudioBuffer SimulateReceiver(const SimScene& scene, const Vec3& receiver) {
  scene.Validate();
  const double rate = scene.sample_rate();
  const std::size_t n = scene.num_samples();
  AudioBuffer out(1, n, rate);
  auto& y = out.channels[0];
  for (const auto& src : scene.sources) {
    const auto x = src.signal.channel(0);
    std::size_t cached = src.track.size();
    double delay = 0.0, gain = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t s =
          PoseFrameForSample(t, rate, src.fps, src.track.size());
      if (s != cached) {
        const double d = EuclideanDist(receiver, src.track[s]);
        if (d < kMinDistance)
          throw DegenerateInput("receiver within 1 mm of a source");
        delay = d / scene.v_sound * rate;
        gain = scene.reference_distance / d;
        cached = s;
      }
      y[t] += gain * FractionalRead(x, static_cast<double>(t) - delay, scene.interp);
    }
  }
  return out;
}

AudioBuffer SimulateArray(const SimScene& scene, const MicArrayGeometry& geom) {
  geom.Validate();
  scene.Validate();
  AudioBuffer out(geom.size(), scene.num_samples(), scene.sample_rate());
  ParallelFor(geom.size(), [&](std::size_t i) {
    out.channels[i] =
        SimulateReceiver(scene, SphToCart(geom.mics[i].pos)).channels[0];
  });
  return out;
}

AudioBuffer BandLimitedNoise(std::size_t num_samples, double sample_rate,
                             double f_lo, double f_hi, std::uint64_t seed,
                             double rms, double fade_s) {
  if (num_samples < 2) throw InvalidArgument("noise needs at least 2 samples");
  if (!(0.0 <= f_lo && f_lo < f_hi && f_hi <= sample_rate / 2.0))
    throw InvalidArgument("noise band must satisfy 0 <= lo < hi <= nyquist");
  std::mt19937_64 gen(seed);
  const auto uniform = [&] {
    // (0, 1], 53 random bits
    return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
  };
  std::vector<double> x(num_samples);
  for (std::size_t i = 0; i < num_samples; i += 2) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 2.0 * std::numbers::pi * uniform();
    x[i] = r * std::cos(a);
    if (i + 1 < num_samples) x[i + 1] = r * std::sin(a);
  }

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, x);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double f = static_cast<double>(k) * sample_rate /
                     static_cast<double>(num_samples);
    if (f < f_lo || f > f_hi) spec[k] = 0.0;
  }
  fft.inv(x, spec, static_cast<long>(num_samples));

  const auto fade = std::min<std::size_t>(
      static_cast<std::size_t>(fade_s * sample_rate), num_samples / 2);
  for (std::size_t i = 0; i < fade; ++i) {
    const double g =
        0.5 - 0.5 * std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) /
                             static_cast<double>(fade));
    x[i] *= g;
    x[num_samples - 1 - i] *= g;
  }
  double energy = 0.0;
  for (double v : x) energy += v * v;
  const double current = std::sqrt(energy / static_cast<double>(num_samples));
  if (current > 0.0)
    for (double& v : x) v *= rms / current;
  return AudioBuffer::Mono(std::move(x), sample_rate);
}

}  // namespace soundfield
