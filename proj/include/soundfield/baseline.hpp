// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>

#include "soundfield/audio.hpp"
#include "soundfield/geometry.hpp"

namespace soundfield {

inline constexpr double kMinBaselineDistance = 0.05;

struct BaselineConfig {
  double v_sound = 343.0;
  double reference_distance = 1.0;
  std::string head_joint = "nose";
};

// Non-learned spatializer: assumes all sound leaves the head, delays the
// head-mic signal by d1 / v (d1 = head to target, per pose frame) and applies
// reference_distance / max(d1, 5 cm) per pose frame.
AudioBuffer NaiveSpatialize(const AudioBuffer& input, const PoseTrack& pose,
                            const Vec3& target, const BaselineConfig& cfg = {});

// One channel per microphone, geometry order.
AudioBuffer NaiveSpatializeArray(const AudioBuffer& input,
                                 const PoseTrack& pose,
                                 const MicArrayGeometry& geom,
                                 const BaselineConfig& cfg = {});

}  // namespace soundfield
