// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace soundfield {

inline constexpr double kDefaultSampleRate = 48000.0;

// Multichannel real-valued audio. All channels have the same length.
struct AudioBuffer {
  std::vector<std::vector<double>> channels;
  double sample_rate = kDefaultSampleRate;

  AudioBuffer() = default;
  AudioBuffer(std::size_t num_channels, std::size_t num_samples,
              double rate = kDefaultSampleRate)
      : channels(num_channels, std::vector<double>(num_samples, 0.0)),
        sample_rate(rate) {}
  static AudioBuffer Mono(std::vector<double> samples,
                          double rate = kDefaultSampleRate);

  std::size_t num_channels() const { return channels.size(); }
  std::size_t num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }
  std::span<const double> channel(std::size_t c) const { return channels[c]; }
  std::span<double> channel(std::size_t c) { return channels[c]; }

  // Throws InvalidArgument on ragged channels, bad rate or non-finite data.
  void Validate() const;
  AudioBuffer Channel(std::size_t c) const;
};

// Throws InvalidArgument unless both buffers have the same shape.
void RequireSameShape(const AudioBuffer& a, const AudioBuffer& b,
                      const char* what);

enum class WavSampleFormat { kFloat32, kInt16, kInt24 };

// Reads PCM int16/int24/int32 or IEEE float32/float64 RIFF WAVE files
// (including WAVE_FORMAT_EXTENSIBLE). Integer samples are scaled by the
// positive full scale: int16 32767 <-> 1.0, int24 8388607 <-> 1.0.
AudioBuffer ReadWav(const std::string& path);
void WriteWav(const std::string& path, const AudioBuffer& buf,
              WavSampleFormat format = WavSampleFormat::kFloat32);

// In-memory variants used by the file functions.
AudioBuffer DecodeWav(std::span<const unsigned char> bytes);
std::vector<unsigned char> EncodeWav(const AudioBuffer& buf,
                                     WavSampleFormat format);

}  // namespace soundfield
