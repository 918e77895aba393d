// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "soundfield/audio.hpp"
#include "soundfield/geometry.hpp"

namespace soundfield {

enum class DelayInterp {
  kLinear,
  // Blackman-windowed sinc, 64 taps. For oracle runs that need accuracy well
  // beyond linear interpolation.
  kWindowedSinc,
};

// A point source: a mono signal and either a single static position or one
// position per pose frame (held constant within the frame).
struct SimSource {
  AudioBuffer signal;
  std::vector<Vec3> track;
  double fps = 30.0;

  static SimSource Static(AudioBuffer signal, const Vec3& pos);
};

// Free-field scene: sources radiate spherically, without reflections.
struct SimScene {
  std::vector<SimSource> sources;
  double v_sound = 343.0;
  double reference_distance = 1.0;
  DelayInterp interp = DelayInterp::kLinear;

  double sample_rate() const;
  std::size_t num_samples() const;
  // Throws InvalidArgument on empty/ill-formed scenes.
  void Validate() const;
};

// Sum over sources of signal(t - d/v) * reference_distance / d. Reads before
// the start or past the end of a source signal are silent. Throws
// DegenerateInput when the receiver is within 1 mm of a source.
AudioBuffer SimulateReceiver(const SimScene& scene, const Vec3& receiver);

// One channel per microphone, in geometry order.
AudioBuffer SimulateArray(const SimScene& scene, const MicArrayGeometry& geom);

// Reads x at fractional index u, zero outside [0, n-1].
double FractionalRead(std::span<const double> x, double u, DelayInterp interp);

// Deterministic Gaussian noise (own Box-Muller on mt19937_64, so identical on
// every platform), band-limited to [f_lo, f_hi] with a spectral brick wall,
// scaled to the given RMS and tapered with `fade_s` raised-cosine edges.
AudioBuffer BandLimitedNoise(std::size_t num_samples, double sample_rate,
                             double f_lo, double f_hi, std::uint64_t seed,
                             double rms = 0.1, double fade_s = 0.02);

}  // namespace soundfield
