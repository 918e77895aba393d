// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "soundfield/geometry.hpp"
#include "soundfield/sim.hpp"

namespace soundfield {

// JSON file formats. All loaders throw ConfigError naming the file and the
// offending field (or line/column for syntax errors).
//
// Mic array:  {"nominal_radius_m": 1.7,
//              "mics": [{"id": "m0", "azimuth_rad": 0.0, "polar_rad": 1.57,
//                        "radius_m": 1.7}, ...]}   radius_m is optional.
// Pose track: {"fps": 30, "joints": ["nose", ...],
//              "frames": [[[x, y, z], ...], ...]}
// Scene:      {"v_sound": 343.0, "reference_distance_m": 1.0,
//              "interpolation": "linear" | "sinc",
//              "sources": [{"wav": "a.wav", "position": [x, y, z]},
//                          {"wav": "b.wav", "joint_track": "pose.json#left_hand"}]}
// Relative paths inside a scene resolve against the scene file's directory.

MicArrayGeometry MicArrayFromJson(const nlohmann::json& j,
                                  const std::string& origin = "<json>");
nlohmann::json MicArrayToJson(const MicArrayGeometry& geom);
MicArrayGeometry LoadMicArray(const std::string& path);

PoseTrack PoseTrackFromJson(const nlohmann::json& j,
                            const std::string& origin = "<json>");
nlohmann::json PoseTrackToJson(const PoseTrack& pose);
PoseTrack LoadPoseTrack(const std::string& path);

SimScene LoadScene(const std::string& path);

// Parses a JSON file; syntax errors become ConfigError with line and column.
nlohmann::json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const nlohmann::json& j);

}  // namespace soundfield
