// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "soundfield/audio.hpp"
#include "soundfield/geometry.hpp"

namespace soundfield {

// Per-sample fractional read positions into an input signal; monotone
// non-decreasing.
struct Warpfield {
  std::vector<double> rho;
  double sample_rate = kDefaultSampleRate;

  std::size_t size() const { return rho.size(); }
};

struct WarpRequest {
  std::string source_joint;
  std::string input_mic_joint = "nose";
  Vec3 target;
  double v_sound = 343.0;
  double sample_rate = kDefaultSampleRate;
  std::size_t num_samples = 0;
};

// Pose frame that governs audio sample t: floor(t * fps / sample_rate),
// clamped to the track. At 48 kHz / 30 fps that is one frame per 1600
// samples.
std::size_t PoseFrameForSample(std::size_t t, double sample_rate, double fps,
                               std::size_t num_frames);

// Throws InvalidArgument unless the track has a frame for every sample.
// Single-frame tracks describe a static pose and cover any duration.
void RequirePoseCovers(const PoseTrack& pose, std::size_t num_samples,
                       double sample_rate);

// Geometric warp that maps the signal recorded at the input mic onto the
// target position, assuming sound emitted at the source joint:
//   d1 = |target - src(s)|, d2 = |in(s) - src(s)|, dt = (d2 - d1) / v,
//   rho_t = max(rho_{t-1}, t + dt * sample_rate),  rho_0 >= 0.
// The target hears the source d1 - d2 metres of travel later than the input
// mic, so its sample t is input sample t - (d1 - d2) / v * sample_rate.
// rho_t may exceed t when the target is closer to the source.
Warpfield ComputeWarpfield(const PoseTrack& pose, const WarpRequest& req);

// Linear interpolation at fractional indices; reads outside the signal clamp
// to the first/last sample. Throws InvalidArgument on a length mismatch.
AudioBuffer ApplyWarp(const AudioBuffer& signal, const Warpfield& wf);

// For each input channel: the original followed by one warp per joint.
// Output has C_in * (1 + joints.size()) channels.
AudioBuffer WarpStack(const AudioBuffer& input, const PoseTrack& pose,
                      const std::vector<std::string>& joints,
                      const Vec3& target, double v_sound = 343.0,
                      const std::string& input_mic_joint = "nose");

}  // namespace soundfield
