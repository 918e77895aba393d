// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "soundfield/error.hpp"

namespace soundfield {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double WrapAzimuth(double az) {
  double w = std::fmod(az, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2*pi
  if (w >= kTwoPi) w = 0.0;
  return w;
}
}  // namespace

double Vec3::Norm() const { return std::hypot(x, y, z); }

SphericalPos MakeSpherical(double azimuth, double polar, double radius) {
  if (!std::isfinite(azimuth) || !std::isfinite(polar) ||
      !std::isfinite(radius))
    throw InvalidArgument("spherical position must be finite");
  if (radius <= 0.0) throw InvalidArgument("radius must be positive");
  if (polar < 0.0 || polar > std::numbers::pi)
    throw InvalidArgument("polar angle must lie in [0, pi]");
  SphericalPos p{WrapAzimuth(azimuth), polar, radius};
  if (polar == 0.0 || polar == std::numbers::pi) p.azimuth = 0.0;
  return p;
}

Vec3 SphToCart(const SphericalPos& p, bool unit) {
  const double r = unit ? 1.0 : p.radius;
  const double s = std::sin(p.polar);
  return {r * std::cos(p.azimuth) * s, r * std::sin(p.azimuth) * s,
          r * std::cos(p.polar)};
}

SphericalPos CartToSph(const Vec3& v) {
  const double r = v.Norm();
  if (!(r > 0.0)) throw DegenerateInput("cannot convert the zero vector");
  // atan2 of the in-plane radius is accurate near the poles, unlike acos.
  const double rho = std::hypot(v.x, v.y);
  SphericalPos p;
  p.radius = r;
  p.polar = std::atan2(rho, v.z);
  p.azimuth = rho == 0.0 ? 0.0 : WrapAzimuth(std::atan2(v.y, v.x));
  return p;
}

double EuclideanDist(const Vec3& a, const Vec3& b) { return (a - b).Norm(); }

void MicArrayGeometry::Validate() const {
  if (mics.empty()) throw InvalidArgument("microphone array is empty");
  if (!(nominal_radius > 0.0))
    throw InvalidArgument("nominal radius must be positive");
  std::set<std::string> seen;
  for (const auto& m : mics) {
    if (!seen.insert(m.id).second)
      throw InvalidArgument("duplicate microphone id '" + m.id + "'");
    MakeSpherical(m.pos.azimuth, m.pos.polar, m.pos.radius);
  }
}

MicArrayGeometry FibonacciSphere(std::size_t count, double radius) {
  MicArrayGeometry geom;
  geom.nominal_radius = radius;
  const double golden = std::numbers::pi * (1.0 + std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double polar = std::acos(1.0 - 2.0 * u);
    const double az = golden * (static_cast<double>(i) + 0.5);
    char id[32];
    std::snprintf(id, sizeof(id), "mic%03zu", i);
    geom.mics.push_back({id, MakeSpherical(az, polar, radius)});
  }
  return geom;
}

std::size_t PoseTrack::JointIndex(const std::string& name) const {
  for (std::size_t j = 0; j < joint_names.size(); ++j)
    if (joint_names[j] == name) return j;
  throw InvalidArgument("unknown joint '" + name + "'");
}

void PoseTrack::Validate() const {
  if (!(fps > 0.0)) throw InvalidArgument("pose fps must be positive");
  if (frames.empty()) throw InvalidArgument("pose track has no frames");
  for (std::size_t s = 0; s < frames.size(); ++s) {
    if (frames[s].size() != joint_names.size())
      throw InvalidArgument("pose frame " + std::to_string(s) + " has " +
                            std::to_string(frames[s].size()) +
                            " joints, expected " +
                            std::to_string(joint_names.size()));
    for (const auto& p : frames[s])
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw InvalidArgument("non-finite joint position in frame " +
                              std::to_string(s));
  }
}

PoseTrack PoseTrack::Static(const std::map<std::string, Vec3>& joints,
                            std::size_t num_frames, double fps) {
  PoseTrack pose;
  pose.fps = fps;
  std::vector<Vec3> frame;
  for (const auto& [name, pos] : joints) {
    pose.joint_names.push_back(name);
    frame.push_back(pos);
  }
  pose.frames.assign(num_frames, frame);
  return pose;
}

std::vector<std::string> DefaultWarpJoints() {
  return {"left_hand", "right_hand", "left_foot", "right_foot", "nose", "hip"};
}

}  // namespace soundfield
