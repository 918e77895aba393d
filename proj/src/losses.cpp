// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "soundfield/error.hpp"

namespace soundfield {

namespace {

double StdDev(std::span<const double> x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(x.size()));
}

}  // namespace

void ShiftL2Config::Validate() const {
  if (segment < 1) throw InvalidArgument("shift-l2 segment length must be >= 1");
  if (!(alpha >= 0.0)) throw InvalidArgument("shift-l2 alpha must be >= 0");
  if (!(delta > 0.0)) throw InvalidArgument("shift-l2 delta must be > 0");
}

std::vector<double> ShiftPenalty(const ShiftL2Config& cfg) {
  cfg.Validate();
  auto w = Blackman(2 * cfg.segment + 1);
  for (double& v : w) v = cfg.alpha * (1.0 - v);
  return w;
}

std::vector<double> ShiftL2Segments(std::span<const double> est,
                                    std::span<const double> ref,
                                    const ShiftL2Config& cfg) {
  cfg.Validate();
  if (est.size() != ref.size())
    throw InvalidArgument("shift-l2: est and ref lengths differ");
  const std::size_t len = cfg.segment;
  if (est.size() < len)
    throw InvalidArgument("shift-l2: signal shorter than one segment");

  const auto penalty = ShiftPenalty(cfg);
  const std::size_t segments = est.size() / len;
  const auto n = static_cast<long>(ref.size());
  const auto span = static_cast<long>(len);

  double clip_sigma_ref = 0.0, clip_sigma_est = 0.0;
  if (cfg.sigma_scope == SigmaScope::kClip) {
    clip_sigma_ref = StdDev(ref);
    clip_sigma_est = StdDev(est);
  }

  std::vector<double> values(segments);
  for (std::size_t seg = 0; seg < segments; ++seg) {
    const std::size_t start = seg * len;
    double sigma_ref = clip_sigma_ref, sigma_est = clip_sigma_est;
    if (cfg.sigma_scope == SigmaScope::kSegment) {
      sigma_ref = StdDev(ref.subspan(start, len));
      sigma_est = StdDev(est.subspan(start, len));
    }
    const double den =
        std::sqrt(sigma_ref * std::min(sigma_ref, sigma_est)) + cfg.delta;

    double best = std::numeric_limits<double>::infinity();
    for (long tau = -span; tau <= span; ++tau) {
      double acc = 0.0;
      for (std::size_t t = 0; t < len; ++t) {
        const long idx = static_cast<long>(start + t) + tau;
        const double r =
            (idx >= 0 && idx < n) ? ref[static_cast<std::size_t>(idx)] : 0.0;
        const double q = (est[start + t] - r) / den;
        acc += q * q;
      }
      const double l2 = acc / static_cast<double>(len);
      const double v =
          (l2 + 1.0) * (penalty[static_cast<std::size_t>(tau + span)] + 1.0) - 1.0;
      best = std::min(best, v);
    }
    values[seg] = best;
  }
  return values;
}

double ShiftL2(const AudioBuffer& est, const AudioBuffer& ref,
               const ShiftL2Config& cfg) {
  RequireSameShape(est, ref, "shift-l2");
  if (est.num_channels() == 0) throw InvalidArgument("shift-l2: no channels");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t c = 0; c < est.num_channels(); ++c) {
    for (double v : ShiftL2Segments(est.channel(c), ref.channel(c), cfg)) {
      sum += v;
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

void MsStftConfig::Validate() const {
  if (windows.empty()) throw InvalidArgument("multiscale STFT needs windows");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 8)
      throw InvalidArgument("multiscale STFT windows must be >= 8");
    for (std::size_t j = 0; j < i; ++j)
      if (windows[j] == windows[i])
        throw InvalidArgument("multiscale STFT windows must be unique");
  }
  if (!(weight >= 0.0)) throw InvalidArgument("STFT loss weight must be >= 0");
}

SpectralTerms StftMagnitudeLoss(const Spectrogram& est, const Spectrogram& ref) {
  if (est.values.size() != ref.values.size() ||
      est.num_bins != ref.num_bins || est.num_frames != ref.num_frames)
    throw InvalidArgument("spectrogram shapes differ");
  constexpr double kPowerFloor = 1e-7;
  double diff2 = 0.0, ref2 = 0.0, log_l1 = 0.0;
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    const double me = std::sqrt(std::max(std::norm(est.values[i]), kPowerFloor));
    const double mr = std::sqrt(std::max(std::norm(ref.values[i]), kPowerFloor));
    diff2 += (mr - me) * (mr - me);
    ref2 += mr * mr;
    log_l1 += std::abs(std::log(mr) - std::log(me));
  }
  SpectralTerms out;
  out.spectral_convergence = std::sqrt(diff2) / std::sqrt(ref2);
  out.log_magnitude = log_l1 / static_cast<double>(ref.values.size());
  return out;
}

double MultiscaleStftLoss(const AudioBuffer& est, const AudioBuffer& ref,
                          const MsStftConfig& cfg) {
  cfg.Validate();
  RequireSameShape(est, ref, "multiscale STFT loss");
  bool silent = true;
  for (const auto& ch : ref.channels)
    silent = silent && std::all_of(ch.begin(), ch.end(),
                                   [](double v) { return v == 0.0; });
  if (silent)
    throw DegenerateReference("spectral convergence undefined for silence");

  double total = 0.0;
  for (std::size_t window : cfg.windows) {
    StftConfig sc;
    sc.window_size = window;
    sc.hop = window / 4;
    sc.window = WindowKind::kHann;
    total += StftMagnitudeLoss(Stft(est, sc), Stft(ref, sc)).sum();
  }
  return total / static_cast<double>(cfg.windows.size());
}

LossReport CombinedLoss(const AudioBuffer& est, const AudioBuffer& ref,
                        const ShiftL2Config& shift_cfg,
                        const MsStftConfig& ms_cfg) {
  LossReport r;
  r.shift_l2 = ShiftL2(est, ref, shift_cfg);
  r.ms_stft = MultiscaleStftLoss(est, ref, ms_cfg);
  r.combined = r.shift_l2 + ms_cfg.weight * r.ms_stft;
  return r;
}

}  // namespace soundfield
