// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "soundfield/audio.hpp"

namespace soundfield {

using cdouble = std::complex<double>;

enum class WindowKind { kHann, kBlackman, kRect };

std::string ToString(WindowKind kind);
// Throws InvalidArgument for unknown names.
WindowKind ParseWindowKind(const std::string& name);

// Symmetric Blackman window (0.42, 0.5, 0.08) of odd length >= 3. The
// endpoints are exactly 0 and the center exactly 1.
std::vector<double> Blackman(std::size_t len);

// Periodic analysis window of the given length.
std::vector<double> MakeWindow(WindowKind kind, std::size_t len);

struct StftConfig {
  std::size_t window_size = 1024;
  std::size_t hop = 256;
  WindowKind window = WindowKind::kHann;
  // Centered frames with reflect padding of window_size/2 on both sides.
  bool center = true;

  std::size_t num_bins() const { return window_size / 2 + 1; }
  void Validate() const;
  friend bool operator==(const StftConfig&, const StftConfig&) = default;
};

// One-sided complex STFT, values(c, t, f).
//
// Sign convention: X(t, f) = sum_n w(n) x(n + tH) exp(+2 pi i f n / N), i.e.
// the time-harmonic convention exp(-i omega t). With this convention an
// outgoing spherical wave is exp(+ikr)/r, which is what the first-kind
// spherical Hankel functions in the sound field codec describe. Magnitudes
// are identical to the more common exp(-i...) kernel; phases are negated.
struct Spectrogram {
  std::size_t num_channels = 0;
  std::size_t num_frames = 0;
  std::size_t num_bins = 0;
  StftConfig config;
  double sample_rate = kDefaultSampleRate;
  // Length of the analysed signal; istft reproduces this many samples.
  std::size_t num_samples = 0;
  std::vector<cdouble> values;

  Spectrogram() = default;
  Spectrogram(std::size_t channels, std::size_t frames, const StftConfig& cfg,
              double rate, std::size_t samples);

  std::size_t Index(std::size_t c, std::size_t t, std::size_t f) const {
    return (c * num_frames + t) * num_bins + f;
  }
  cdouble& at(std::size_t c, std::size_t t, std::size_t f) {
    return values[Index(c, t, f)];
  }
  const cdouble& at(std::size_t c, std::size_t t, std::size_t f) const {
    return values[Index(c, t, f)];
  }
  // Frequency of bin f in Hz.
  double BinFrequency(std::size_t f) const {
    return static_cast<double>(f) * sample_rate /
           static_cast<double>(config.window_size);
  }
  // Same layout except for the channel count, zero-filled.
  Spectrogram ZerosLike(std::size_t channels) const;
};

// Number of frames produced for a signal of `num_samples` samples.
std::size_t NumFrames(std::size_t num_samples, const StftConfig& cfg);

// Throws InvalidArgument when the signal is shorter than the window.
Spectrogram Stft(const AudioBuffer& buf, const StftConfig& cfg);

// Weighted overlap-add inverse. Throws InvalidArgument when the window/hop
// pair does not overlap-add to a strictly positive envelope.
AudioBuffer Istft(const Spectrogram& spec);

// True when the squared window overlap-adds to a positive envelope.
bool SatisfiesOverlapAdd(const StftConfig& cfg);

}  // namespace soundfield
