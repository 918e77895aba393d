// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "soundfield/error.hpp"

namespace soundfield {

namespace {

double SdrFromEnergies(double ref_energy, double residual_energy) {
  if (ref_energy == 0.0)
    throw DegenerateReference("SDR undefined for an all-zero reference");
  if (residual_energy == 0.0) return kSdrCapDb;
  return std::min(kSdrCapDb, 10.0 * std::log10(ref_energy / residual_energy));
}

void RequireSameLayout(const Spectrogram& a, const Spectrogram& b) {
  if (a.values.size() != b.values.size() || a.num_bins != b.num_bins ||
      a.num_frames != b.num_frames)
    throw InvalidArgument("spectrogram shapes differ");
}

}  // namespace

double Sdr(std::span<const double> est, std::span<const double> ref) {
  if (est.size() != ref.size()) throw InvalidArgument("SDR: lengths differ");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += ref[i] * ref[i];
    den += (ref[i] - est[i]) * (ref[i] - est[i]);
  }
  return SdrFromEnergies(num, den);
}

double Sdr(const AudioBuffer& est, const AudioBuffer& ref) {
  RequireSameShape(est, ref, "SDR");
  double num = 0.0, den = 0.0;
  for (std::size_t c = 0; c < ref.num_channels(); ++c) {
    for (std::size_t i = 0; i < ref.num_samples(); ++i) {
      const double r = ref.channels[c][i], e = est.channels[c][i];
      num += r * r;
      den += (r - e) * (r - e);
    }
  }
  return SdrFromEnergies(num, den);
}

double AmplitudeError(const Spectrogram& est, const Spectrogram& ref) {
  RequireSameLayout(est, ref);
  if (ref.values.empty()) throw InvalidArgument("empty spectrogram");
  double acc = 0.0;
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    const double d = std::abs(est.values[i]) - std::abs(ref.values[i]);
    acc += d * d;
  }
  return 1000.0 * (acc / static_cast<double>(ref.values.size()));
}

double AmplitudeError(const AudioBuffer& est, const AudioBuffer& ref,
                      const StftConfig& cfg) {
  RequireSameShape(est, ref, "amplitude error");
  return AmplitudeError(Stft(est, cfg), Stft(ref, cfg));
}

double PhaseError(const Spectrogram& est, const Spectrogram& ref) {
  RequireSameLayout(est, ref);
  double peak = 0.0;
  for (const auto& v : ref.values) peak = std::max(peak, std::abs(v));
  const double floor = 1e-8 * peak;
  double weighted = 0.0, total = 0.0;
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    const double w = std::abs(ref.values[i]);
    if (w < floor || w == 0.0) continue;
    // arg of E conj(R) is the wrapped phase difference in (-pi, pi].
    weighted += w * std::abs(std::arg(est.values[i] * std::conj(ref.values[i])));
    total += w;
  }
  if (total == 0.0)
    throw DegenerateReference("phase error: reference has no energy");
  return weighted / total;
}

double PhaseError(const AudioBuffer& est, const AudioBuffer& ref,
                  const StftConfig& cfg) {
  RequireSameShape(est, ref, "phase error");
  return PhaseError(Stft(est, cfg), Stft(ref, cfg));
}

}  // namespace soundfield
