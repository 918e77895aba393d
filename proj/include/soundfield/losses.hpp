// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "soundfield/audio.hpp"
#include "soundfield/stft.hpp"

namespace soundfield {

// Scope of the standard deviations that normalize the shift-l2 error.
enum class SigmaScope {
  kSegment,  // est segment and the unshifted ref segment, per segment
  kClip,     // whole est / ref channel
};

struct ShiftL2Config {
  std::size_t segment = 128;  // L; offsets run over [-L, L]
  double alpha = 100.0;       // offset penalty scale
  double delta = 0.001;       // denominator floor
  SigmaScope sigma_scope = SigmaScope::kSegment;

  void Validate() const;
};

// Offset penalty alpha * (1 - blackman(2L + 1)), indexed by tau + L.
std::vector<double> ShiftPenalty(const ShiftL2Config& cfg);

// Value of every complete length-L segment of one channel:
//   min over tau of (l2(tau) + 1) * (W(tau) + 1) - 1,
//   l2(tau) = 1/L sum_t ((est[nL+t] - ref[nL+t+tau]) / den)^2,
//   den = sqrt(sigma_ref * min(sigma_ref, sigma_est)) + delta.
// ref reads outside the channel are zero; a trailing partial segment is
// dropped. Throws InvalidArgument on a length mismatch or a channel shorter
// than L.
std::vector<double> ShiftL2Segments(std::span<const double> est,
                                    std::span<const double> ref,
                                    const ShiftL2Config& cfg = {});

// Mean of the segment values over all segments and channels.
double ShiftL2(const AudioBuffer& est, const AudioBuffer& ref,
               const ShiftL2Config& cfg = {});

struct MsStftConfig {
  std::vector<std::size_t> windows{256, 128, 64, 32};  // hop = window / 4
  double weight = 100.0;  // applied by CombinedLoss

  void Validate() const;
};

struct SpectralTerms {
  double spectral_convergence = 0.0;
  double log_magnitude = 0.0;

  double sum() const { return spectral_convergence + log_magnitude; }
};

// || |R| - |E| ||_F / || |R| ||_F and mean | log|R| - log|E| |, with
// magnitudes floored at sqrt(1e-7). Depends on magnitudes only.
SpectralTerms StftMagnitudeLoss(const Spectrogram& est, const Spectrogram& ref);

// Mean over resolutions of StftMagnitudeLoss(...).sum() using Hann windows,
// hop window/4. Throws DegenerateReference for an all-zero reference.
double MultiscaleStftLoss(const AudioBuffer& est, const AudioBuffer& ref,
                          const MsStftConfig& cfg = {});

struct LossReport {
  double shift_l2 = 0.0;
  double ms_stft = 0.0;
  double combined = 0.0;  // shift_l2 + weight * ms_stft
};

LossReport CombinedLoss(const AudioBuffer& est, const AudioBuffer& ref,
                        const ShiftL2Config& shift_cfg = {},
                        const MsStftConfig& ms_cfg = {});

}  // namespace soundfield
