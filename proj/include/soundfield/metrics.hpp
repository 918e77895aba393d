// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>

#include "soundfield/audio.hpp"
#include "soundfield/stft.hpp"

namespace soundfield {

inline constexpr double kSdrCapDb = 100.0;

// 10 log10(sum ref^2 / sum (ref - est)^2), at most +100 dB. SDR is a plain
// energy ratio, not a BSS-eval projection. Throws DegenerateReference for an
// all-zero reference.
double Sdr(std::span<const double> est, std::span<const double> ref);
// Over all channels jointly.
double Sdr(const AudioBuffer& est, const AudioBuffer& ref);

// 1000 * mean over bins of (|E| - |R|)^2.
double AmplitudeError(const Spectrogram& est, const Spectrogram& ref);
double AmplitudeError(const AudioBuffer& est, const AudioBuffer& ref,
                      const StftConfig& cfg = {});

// |R|-weighted mean of |wrap(angle E - angle R)| in [0, pi]. Bins with
// |R| < 1e-8 max|R| carry no weight; DegenerateReference if none remain.
double PhaseError(const Spectrogram& est, const Spectrogram& ref);
double PhaseError(const AudioBuffer& est, const AudioBuffer& ref,
                  const StftConfig& cfg = {});

}  // namespace soundfield
