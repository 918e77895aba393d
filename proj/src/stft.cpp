// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/stft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "soundfield/error.hpp"
#include "soundfield/parallel.hpp"

namespace soundfield {

std::string ToString(WindowKind kind) {
  switch (kind) {
    case WindowKind::kHann:
      return "hann";
    case WindowKind::kBlackman:
      return "blackman";
    case WindowKind::kRect:
      return "rect";
  }
  return "unknown";
}

WindowKind ParseWindowKind(const std::string& name) {
  if (name == "hann") return WindowKind::kHann;
  if (name == "blackman") return WindowKind::kBlackman;
  if (name == "rect") return WindowKind::kRect;
  throw InvalidArgument("unknown window kind '" + name + "'");
}

std::vector<double> Blackman(std::size_t len) {
  if (len < 3 || len % 2 == 0)
    throw InvalidArgument("Blackman length must be odd and >= 3, got " +
                          std::to_string(len));
  std::vector<double> w(len);
  const double denom = static_cast<double>(len - 1);
  for (std::size_t k = 0; k < len; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / denom;
    w[k] = 0.42 - 0.5 * std::cos(a) + 0.08 * std::cos(2.0 * a);
  }
  // Pin the analytic values; rounding leaves ~1e-17 residue otherwise.
  for (std::size_t k = 0; k < len / 2; ++k) {
    w[k] = std::max(0.0, w[k]);
    w[len - 1 - k] = w[k];
  }
  w.front() = 0.0;
  w.back() = 0.0;
  w[len / 2] = 1.0;
  return w;
}

std::vector<double> MakeWindow(WindowKind kind, std::size_t len) {
  std::vector<double> w(len, 1.0);
  const double n = static_cast<double>(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    switch (kind) {
      case WindowKind::kHann:
        w[k] = 0.5 - 0.5 * std::cos(a);
        break;
      case WindowKind::kBlackman:
        w[k] = std::max(0.0, 0.42 - 0.5 * std::cos(a) + 0.08 * std::cos(2 * a));
        break;
      case WindowKind::kRect:
        break;
    }
  }
  return w;
}

void StftConfig::Validate() const {
  if (window_size < 2)
    throw InvalidArgument("STFT window must be at least 2 samples");
  if (hop == 0 || hop > window_size)
    throw InvalidArgument("STFT hop must satisfy 0 < hop <= window");
}

bool SatisfiesOverlapAdd(const StftConfig& cfg) {
  cfg.Validate();
  const auto w = MakeWindow(cfg.window, cfg.window_size);
  double peak = 0.0;
  std::vector<double> env(cfg.hop, 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    env[k % cfg.hop] += w[k] * w[k];
    peak = std::max(peak, w[k] * w[k]);
  }
  const double floor = 1e-10 * peak;
  return std::all_of(env.begin(), env.end(),
                     [&](double e) { return e > floor; });
}

Spectrogram::Spectrogram(std::size_t channels, std::size_t frames,
                         const StftConfig& cfg, double rate,
                         std::size_t samples)
    : num_channels(channels),
      num_frames(frames),
      num_bins(cfg.num_bins()),
      config(cfg),
      sample_rate(rate),
      num_samples(samples),
      values(channels * frames * cfg.num_bins()) {}

Spectrogram Spectrogram::ZerosLike(std::size_t channels) const {
  return Spectrogram(channels, num_frames, config, sample_rate, num_samples);
}

std::size_t NumFrames(std::size_t num_samples, const StftConfig& cfg) {
  if (cfg.center) return 1 + num_samples / cfg.hop;
  if (num_samples < cfg.window_size) return 0;
  return 1 + (num_samples - cfg.window_size) / cfg.hop;
}

namespace {

// Signal with reflect padding (edge sample not repeated) when centering.
std::vector<double> PadSignal(std::span<const double> x,
                              const StftConfig& cfg) {
  if (!cfg.center) return {x.begin(), x.end()};
  const std::size_t pad = cfg.window_size / 2;
  const std::size_t n = x.size();
  std::vector<double> out(n + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i) {
    out[pad - 1 - i] = x[i + 1];
    out[pad + n + i] = x[n - 2 - i];
  }
  std::copy(x.begin(), x.end(), out.begin() + static_cast<long>(pad));
  return out;
}

}  // namespace

Spectrogram Stft(const AudioBuffer& buf, const StftConfig& cfg) {
  cfg.Validate();
  buf.Validate();
  const std::size_t n = buf.num_samples();
  if (n < cfg.window_size || n < 2)
    throw InvalidArgument("signal of " + std::to_string(n) +
                          " samples is shorter than the STFT window (" +
                          std::to_string(cfg.window_size) + ")");
  const std::size_t frames = NumFrames(n, cfg);
  Spectrogram spec(buf.num_channels(), frames, cfg, buf.sample_rate, n);
  const auto window = MakeWindow(cfg.window, cfg.window_size);

  ParallelFor(buf.num_channels(), [&](std::size_t c) {
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    const auto padded = PadSignal(buf.channel(c), cfg);
    std::vector<double> frame(cfg.window_size);
    std::vector<cdouble> bins;
    for (std::size_t t = 0; t < frames; ++t) {
      const std::size_t start = t * cfg.hop;
      for (std::size_t k = 0; k < cfg.window_size; ++k)
        frame[k] = padded[start + k] * window[k];
      fft.fwd(bins, frame);
      for (std::size_t f = 0; f < spec.num_bins; ++f)
        spec.at(c, t, f) = std::conj(bins[f]);
    }
  });
  return spec;
}

AudioBuffer Istft(const Spectrogram& spec) {
  const StftConfig& cfg = spec.config;
  if (!SatisfiesOverlapAdd(cfg))
    throw InvalidArgument("window '" + ToString(cfg.window) + "' with hop " +
                          std::to_string(cfg.hop) +
                          " does not overlap-add to a positive envelope");
  if (spec.num_bins != cfg.num_bins() ||
      spec.values.size() !=
          spec.num_channels * spec.num_frames * spec.num_bins)
    throw InvalidArgument("spectrogram shape does not match its config");

  const auto window = MakeWindow(cfg.window, cfg.window_size);
  const std::size_t padded_len =
      spec.num_frames == 0 ? 0
                           : (spec.num_frames - 1) * cfg.hop + cfg.window_size;
  std::vector<double> envelope(padded_len, 0.0);
  for (std::size_t t = 0; t < spec.num_frames; ++t)
    for (std::size_t k = 0; k < cfg.window_size; ++k)
      envelope[t * cfg.hop + k] += window[k] * window[k];
  double peak = 0.0;
  for (double e : envelope) peak = std::max(peak, e);

  const std::size_t offset = cfg.center ? cfg.window_size / 2 : 0;
  AudioBuffer out(spec.num_channels, spec.num_samples, spec.sample_rate);

  ParallelFor(spec.num_channels, [&](std::size_t c) {
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    std::vector<double> acc(padded_len, 0.0);
    std::vector<cdouble> bins(spec.num_bins);
    std::vector<double> frame;
    for (std::size_t t = 0; t < spec.num_frames; ++t) {
      for (std::size_t f = 0; f < spec.num_bins; ++f)
        bins[f] = std::conj(spec.at(c, t, f));
      fft.inv(frame, bins, static_cast<long>(cfg.window_size));
      for (std::size_t k = 0; k < cfg.window_size; ++k)
        acc[t * cfg.hop + k] += frame[k] * window[k];
    }
    auto& dst = out.channels[c];
    for (std::size_t i = 0; i < dst.size(); ++i) {
      const std::size_t j = i + offset;
      if (j < padded_len && envelope[j] > 1e-10 * peak)
        dst[i] = acc[j] / envelope[j];
    }
  });
  return out;
}

}  // namespace soundfield
