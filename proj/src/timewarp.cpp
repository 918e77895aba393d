// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/timewarp.hpp"

#include <algorithm>
#include <cmath>

#include "soundfield/error.hpp"
#include "soundfield/parallel.hpp"

namespace soundfield {

std::size_t PoseFrameForSample(std::size_t t, double sample_rate, double fps,
                               std::size_t num_frames) {
  const double samples_per_frame = sample_rate / fps;
  const auto s = static_cast<std::size_t>(
      std::floor(static_cast<double>(t) / samples_per_frame));
  return std::min(s, num_frames - 1);
}

void RequirePoseCovers(const PoseTrack& pose, std::size_t num_samples,
                       double sample_rate) {
  pose.Validate();
  if (pose.num_frames() == 1 || num_samples == 0) return;
  const auto needed = static_cast<std::size_t>(std::floor(
                          static_cast<double>(num_samples - 1) * pose.fps /
                          sample_rate)) + 1;
  if (pose.num_frames() < needed)
    throw InvalidArgument("pose track has " + std::to_string(pose.num_frames()) +
                          " frames but the audio needs " +
                          std::to_string(needed));
}

Warpfield ComputeWarpfield(const PoseTrack& pose, const WarpRequest& req) {
  pose.Validate();
  if (!(req.v_sound > 0.0)) throw InvalidArgument("speed of sound must be positive");
  if (!(req.sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
  if (req.num_samples == 0) throw InvalidArgument("warpfield length must be >= 1");
  const std::size_t src = pose.JointIndex(req.source_joint);
  const std::size_t in = pose.JointIndex(req.input_mic_joint);

  Warpfield wf;
  wf.sample_rate = req.sample_rate;
  wf.rho.resize(req.num_samples);
  // The shift only changes at pose frame boundaries.
  std::size_t cached_frame = pose.num_frames();
  double shift = 0.0;
  for (std::size_t t = 0; t < req.num_samples; ++t) {
    const std::size_t s =
        PoseFrameForSample(t, req.sample_rate, pose.fps, pose.num_frames());
    if (s != cached_frame) {
      const Vec3& p_src = pose.Joint(s, src);
      const double d1 = EuclideanDist(req.target, p_src);
      const double d2 = EuclideanDist(pose.Joint(s, in), p_src);
      shift = (d2 - d1) / req.v_sound * req.sample_rate;
      cached_frame = s;
    }
    const double candidate = static_cast<double>(t) + shift;
    wf.rho[t] = t == 0 ? std::max(0.0, candidate)
                       : std::max(wf.rho[t - 1], candidate);
  }
  return wf;
}

AudioBuffer ApplyWarp(const AudioBuffer& signal, const Warpfield& wf) {
  if (signal.num_samples() != wf.size())
    throw InvalidArgument("warpfield length " + std::to_string(wf.size()) +
                          " does not match signal length " +
                          std::to_string(signal.num_samples()));
  AudioBuffer out(signal.num_channels(), signal.num_samples(),
                  signal.sample_rate);
  if (signal.num_samples() == 0) return out;
  const double last = static_cast<double>(signal.num_samples() - 1);
  for (std::size_t c = 0; c < signal.num_channels(); ++c) {
    const auto& a = signal.channels[c];
    auto& y = out.channels[c];
    for (std::size_t t = 0; t < wf.size(); ++t) {
      const double rho = std::clamp(wf.rho[t], 0.0, last);
      const double lo = std::floor(rho);
      const double frac = rho - lo;
      const auto i = static_cast<std::size_t>(lo);
      // ceil == floor at integer positions; the weight of the upper sample
      // is zero there, so index i + 1 is never read out of bounds.
      y[t] = frac == 0.0 ? a[i] : (1.0 - frac) * a[i] + frac * a[i + 1];
    }
  }
  return out;
}

AudioBuffer WarpStack(const AudioBuffer& input, const PoseTrack& pose,
                      const std::vector<std::string>& joints,
                      const Vec3& target, double v_sound,
                      const std::string& input_mic_joint) {
  input.Validate();
  const std::size_t n = input.num_samples();
  RequirePoseCovers(pose, n, input.sample_rate);

  std::vector<Warpfield> fields(joints.size());
  ParallelFor(joints.size(), [&](std::size_t j) {
    fields[j] = ComputeWarpfield(
        pose, {joints[j], input_mic_joint, target, v_sound, input.sample_rate, n});
  });

  const std::size_t per_input = 1 + joints.size();
  AudioBuffer out(input.num_channels() * per_input, n, input.sample_rate);
  ParallelFor(input.num_channels(), [&](std::size_t c) {
    const AudioBuffer mono = input.Channel(c);
    out.channels[c * per_input] = mono.channels[0];
    for (std::size_t j = 0; j < joints.size(); ++j)
      out.channels[c * per_input + 1 + j] =
          ApplyWarp(mono, fields[j]).channels[0];
  });
  return out;
}

}  // namespace soundfield
