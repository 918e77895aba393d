// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "soundfield/geometry.hpp"
#include "soundfield/harmonics.hpp"
#include "soundfield/stft.hpp"

namespace soundfield {

inline constexpr double kDefaultSpeedOfSound = 343.0;

// How the f = 0 bin is treated; the Hankel functions are singular at k = 0.
enum class DcPolicy {
  kZero,      // DC coefficients and decoded DC values are zero
  kCopyBin1,  // DC coefficients copy bin 1; decoding DC uses bin 1's radial terms
};

enum class SolveMode {
  kTikhonov,  // (T^H T + lambda I) beta = T^H S, lambda = rel * sigma_max^2
  kExactSvd,  // Moore-Penrose pseudo-inverse via SVD, no regularization
};

struct EncoderConfig {
  // Harmonic order K; negative selects MaxOrder(number of mics).
  int order = -1;
  double tikhonov_rel = 1e-6;
  DcPolicy dc_policy = DcPolicy::kZero;
  SolveMode solve = SolveMode::kTikhonov;
};

// Harmonic sound field coefficients beta_nm(t, f), stored as
// beta[(flat * num_frames + t) * num_bins + f].
struct SoundFieldCoeffs {
  int order = 0;
  StftConfig stft;
  double sample_rate = kDefaultSampleRate;
  double radius = 1.0;  // nominal array radius the field was encoded on
  double v_sound = kDefaultSpeedOfSound;
  DcPolicy dc_policy = DcPolicy::kZero;
  std::size_t num_frames = 0;
  std::size_t num_bins = 0;
  std::size_t num_samples = 0;
  std::vector<cdouble> beta;

  std::size_t num_coefficients() const { return NumCoefficients(order); }
  std::size_t Index(std::size_t flat, std::size_t t, std::size_t f) const {
    return (flat * num_frames + t) * num_bins + f;
  }
  cdouble& at(std::size_t flat, std::size_t t, std::size_t f) {
    return beta[Index(flat, t, f)];
  }
  const cdouble& at(std::size_t flat, std::size_t t, std::size_t f) const {
    return beta[Index(flat, t, f)];
  }
  // Throws InvalidArgument when the tensor does not match the header.
  void Validate() const;
};

// Largest order an N-microphone array supports: floor(sqrt(N)) - 1.
int MaxOrder(std::size_t num_mics);

// N x (K+1)^2 matrix with entries h_n(k r_i) Y_nm(theta_i, phi_i),
// k = 2 pi f / v_sound. Throws DomainError for f <= 0.
Eigen::MatrixXcd BuildTransferMatrix(const MicArrayGeometry& geom,
                                     double freq_hz, int order,
                                     double v_sound = kDefaultSpeedOfSound);

// Per time-frequency bin least-squares inversion of the transfer matrix.
// Throws InvalidArgument on a channel/mic mismatch and OrderTooHigh when the
// order exceeds MaxOrder(N).
SoundFieldCoeffs Encode(const Spectrogram& mic_specs,
                        const MicArrayGeometry& geom, const EncoderConfig& cfg,
                        double v_sound = kDefaultSpeedOfSound);

// Pressure spectrogram at `pos`. Throws DomainError for r = 0.
Spectrogram Decode(const SoundFieldCoeffs& coeffs, const SphericalPos& pos);

// Decode followed by the inverse STFT.
AudioBuffer Render(const SoundFieldCoeffs& coeffs, const SphericalPos& pos);

// Coefficient container: an 80-byte little-endian header followed by the
// complex64 tensor in (flat harmonic, frame, bin) order. See README for the
// layout. WriteCoeffs also writes `<path>.json` with the header fields.
void WriteCoeffs(const std::string& path, const SoundFieldCoeffs& coeffs);
SoundFieldCoeffs ReadCoeffs(const std::string& path);
std::vector<unsigned char> SerializeCoeffs(const SoundFieldCoeffs& coeffs);
SoundFieldCoeffs DeserializeCoeffs(const std::vector<unsigned char>& bytes);
std::string CoeffsHeaderJson(const SoundFieldCoeffs& coeffs);

std::string ToString(DcPolicy policy);
DcPolicy ParseDcPolicy(const std::string& name);

}  // namespace soundfield
