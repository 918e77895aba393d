// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/baseline.hpp"

#include <algorithm>

#include "soundfield/error.hpp"
#include "soundfield/parallel.hpp"
#include "soundfield/timewarp.hpp"

namespace soundfield {

AudioBuffer NaiveSpatialize(const AudioBuffer& input, const PoseTrack& pose,
                            const Vec3& target, const BaselineConfig& cfg) {
  input.Validate();
  if (input.num_channels() != 1)
    throw InvalidArgument("baseline expects a single input channel");
  if (!(cfg.reference_distance > 0.0))
    throw InvalidArgument("reference distance must be positive");
  const std::size_t n = input.num_samples();
  RequirePoseCovers(pose, n, input.sample_rate);
  const std::size_t head = pose.JointIndex(cfg.head_joint);

  // Source and input mic are both the head, so d2 = 0 and dt = -d1 / v.
  const Warpfield wf = ComputeWarpfield(
      pose, {cfg.head_joint, cfg.head_joint, target, cfg.v_sound,
             input.sample_rate, n});
  AudioBuffer out = ApplyWarp(input, wf);

  auto& y = out.channels[0];
  std::size_t cached = pose.num_frames();
  double gain = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t s =
        PoseFrameForSample(t, input.sample_rate, pose.fps, pose.num_frames());
    if (s != cached) {
      const double d1 = EuclideanDist(target, pose.Joint(s, head));
      gain = cfg.reference_distance / std::max(d1, kMinBaselineDistance);
      cached = s;
    }
    y[t] *= gain;
  }
  return out;
}

AudioBuffer NaiveSpatializeArray(const AudioBuffer& input,
                                 const PoseTrack& pose,
                                 const MicArrayGeometry& geom,
                                 const BaselineConfig& cfg) {
  geom.Validate();
  AudioBuffer out(geom.size(), input.num_samples(), input.sample_rate);
  ParallelFor(geom.size(), [&](std::size_t i) {
    out.channels[i] =
        NaiveSpatialize(input, pose, SphToCart(geom.mics[i].pos), cfg)
            .channels[0];
  });
  return out;
}

}  // namespace soundfield
