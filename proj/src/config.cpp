// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "soundfield/error.hpp"

namespace soundfield {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& origin, const std::string& field,
                       const std::string& msg) {
  throw ConfigError(origin + ": " + field + ": " + msg);
}

const json& Require(const json& obj, const std::string& key,
                    const std::string& origin, const std::string& where) {
  if (!obj.is_object()) Fail(origin, where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    Fail(origin, where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

double Number(const json& v, const std::string& origin,
              const std::string& field) {
  if (!v.is_number()) Fail(origin, field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) Fail(origin, field, "must be finite");
  return d;
}

Vec3 ParseVec3(const json& v, const std::string& origin,
               const std::string& field) {
  if (!v.is_array() || v.size() != 3)
    Fail(origin, field, "expected [x, y, z]");
  return {Number(v[0], origin, field + "[0]"), Number(v[1], origin, field + "[1]"),
          Number(v[2], origin, field + "[2]")};
}

std::string Join(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

fs::path Resolve(const fs::path& base_dir, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

}  // namespace

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" +
                      std::to_string(col) + ": invalid JSON");
  }
}

void WriteJsonFile(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError(path + ": cannot write file");
  out << j.dump(2) << "\n";
}

MicArrayGeometry MicArrayFromJson(const json& j, const std::string& origin) {
  MicArrayGeometry geom;
  geom.nominal_radius =
      Number(Require(j, "nominal_radius_m", origin, ""), origin, "nominal_radius_m");
  if (!(geom.nominal_radius > 0.0))
    Fail(origin, "nominal_radius_m", "must be positive");
  const json& mics = Require(j, "mics", origin, "");
  if (!mics.is_array() || mics.empty())
    Fail(origin, "mics", "expected a non-empty array");
  for (std::size_t i = 0; i < mics.size(); ++i) {
    const std::string where = Join("mics", i);
    const json& m = mics[i];
    const json& id = Require(m, "id", origin, where);
    if (!id.is_string()) Fail(origin, where + ".id", "expected a string");
    const double az =
        Number(Require(m, "azimuth_rad", origin, where), origin, where + ".azimuth_rad");
    const double polar =
        Number(Require(m, "polar_rad", origin, where), origin, where + ".polar_rad");
    double radius = geom.nominal_radius;
    if (m.contains("radius_m"))
      radius = Number(m["radius_m"], origin, where + ".radius_m");
    try {
      geom.mics.push_back({id.get<std::string>(), MakeSpherical(az, polar, radius)});
    } catch (const InvalidArgument& e) {
      Fail(origin, where, e.what());
    }
  }
  try {
    geom.Validate();
  } catch (const InvalidArgument& e) {
    Fail(origin, "mics", e.what());
  }
  return geom;
}

json MicArrayToJson(const MicArrayGeometry& geom) {
  json mics = json::array();
  for (const auto& m : geom.mics)
    mics.push_back({{"id", m.id},
                    {"azimuth_rad", m.pos.azimuth},
                    {"polar_rad", m.pos.polar},
                    {"radius_m", m.pos.radius}});
  return {{"nominal_radius_m", geom.nominal_radius}, {"mics", mics}};
}

MicArrayGeometry LoadMicArray(const std::string& path) {
  return MicArrayFromJson(ReadJsonFile(path), path);
}

PoseTrack PoseTrackFromJson(const json& j, const std::string& origin) {
  PoseTrack pose;
  if (j.is_object() && j.contains("fps"))
    pose.fps = Number(j["fps"], origin, "fps");
  if (!(pose.fps > 0.0)) Fail(origin, "fps", "must be positive");
  const json& joints = Require(j, "joints", origin, "");
  if (!joints.is_array() || joints.empty())
    Fail(origin, "joints", "expected a non-empty array of names");
  for (std::size_t i = 0; i < joints.size(); ++i) {
    if (!joints[i].is_string()) Fail(origin, Join("joints", i), "expected a string");
    pose.joint_names.push_back(joints[i].get<std::string>());
  }
  const json& frames = Require(j, "frames", origin, "");
  if (!frames.is_array() || frames.empty())
    Fail(origin, "frames", "expected a non-empty array");
  for (std::size_t s = 0; s < frames.size(); ++s) {
    const std::string where = Join("frames", s);
    if (!frames[s].is_array() || frames[s].size() != pose.joint_names.size())
      Fail(origin, where,
           "expected " + std::to_string(pose.joint_names.size()) + " joints");
    std::vector<Vec3> frame;
    for (std::size_t k = 0; k < frames[s].size(); ++k)
      frame.push_back(ParseVec3(frames[s][k], origin, Join(where, k)));
    pose.frames.push_back(std::move(frame));
  }
  return pose;
}

json PoseTrackToJson(const PoseTrack& pose) {
  json frames = json::array();
  for (const auto& frame : pose.frames) {
    json f = json::array();
    for (const auto& p : frame) f.push_back({p.x, p.y, p.z});
    frames.push_back(f);
  }
  return {{"fps", pose.fps}, {"joints", pose.joint_names}, {"frames", frames}};
}

PoseTrack LoadPoseTrack(const std::string& path) {
  return PoseTrackFromJson(ReadJsonFile(path), path);
}

SimScene LoadScene(const std::string& path) {
  const json j = ReadJsonFile(path);
  const fs::path dir = fs::path(path).parent_path();
  SimScene scene;
  if (!j.is_object()) Fail(path, "<root>", "expected an object");
  if (j.contains("v_sound")) scene.v_sound = Number(j["v_sound"], path, "v_sound");
  if (j.contains("reference_distance_m"))
    scene.reference_distance =
        Number(j["reference_distance_m"], path, "reference_distance_m");
  if (j.contains("interpolation")) {
    const json& v = j["interpolation"];
    if (v == "linear") {
      scene.interp = DelayInterp::kLinear;
    } else if (v == "sinc") {
      scene.interp = DelayInterp::kWindowedSinc;
    } else {
      Fail(path, "interpolation", "expected \"linear\" or \"sinc\"");
    }
  }
  const json& sources = Require(j, "sources", path, "");
  if (!sources.is_array() || sources.empty())
    Fail(path, "sources", "expected a non-empty array");
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const std::string where = Join("sources", i);
    const json& s = sources[i];
    const json& wav = Require(s, "wav", path, where);
    if (!wav.is_string()) Fail(path, where + ".wav", "expected a path string");
    SimSource src;
    try {
      src.signal = ReadWav(Resolve(dir, wav.get<std::string>()).string());
    } catch (const Error& e) {
      Fail(path, where + ".wav", e.what());
    }
    if (src.signal.num_channels() != 1)
      Fail(path, where + ".wav", "source WAV must be mono");
    if (s.contains("position")) {
      src.track = {ParseVec3(s["position"], path, where + ".position")};
    } else if (s.contains("joint_track")) {
      const json& jt = s["joint_track"];
      std::string pose_path, joint;
      if (jt.is_string()) {
        const std::string spec = jt.get<std::string>();
        const auto hash = spec.rfind('#');
        if (hash == std::string::npos)
          Fail(path, where + ".joint_track", "expected \"pose.json#joint\"");
        pose_path = spec.substr(0, hash);
        joint = spec.substr(hash + 1);
      } else if (jt.is_object() && jt.contains("pose") && jt.contains("joint") &&
                 jt["pose"].is_string() && jt["joint"].is_string()) {
        pose_path = jt["pose"].get<std::string>();
        joint = jt["joint"].get<std::string>();
      } else {
        Fail(path, where + ".joint_track",
             "expected \"pose.json#joint\" or {\"pose\": ..., \"joint\": ...}");
      }
      const PoseTrack pose = LoadPoseTrack(Resolve(dir, pose_path).string());
      std::size_t idx = 0;
      try {
        idx = pose.JointIndex(joint);
      } catch (const InvalidArgument& e) {
        Fail(path, where + ".joint_track", e.what());
      }
      src.fps = pose.fps;
      for (std::size_t f = 0; f < pose.num_frames(); ++f)
        src.track.push_back(pose.Joint(f, idx));
    } else {
      Fail(path, where, "needs \"position\" or \"joint_track\"");
    }
    scene.sources.push_back(std::move(src));
  }
  try {
    scene.Validate();
  } catch (const InvalidArgument& e) {
    Fail(path, "sources", e.what());
  }
  return scene;
}

}  // namespace soundfield
