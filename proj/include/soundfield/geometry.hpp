// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace soundfield {

// Right-handed Cartesian position in meters.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(double s, const Vec3& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  double Norm() const;
};

// Spherical position.
//
// NOTE: `polar` is the colatitude measured from +z (z = r cos(polar)), not an
// elevation above the horizontal plane. Azimuth is measured from +x towards
// +y and is kept in [0, 2*pi). At the poles the azimuth is 0.
struct SphericalPos {
  double azimuth = 0.0;
  double polar = 0.0;
  double radius = 1.0;
};

// Validates and canonicalizes a spherical position (azimuth wrapped into
// [0, 2*pi), poles get azimuth 0). Throws InvalidArgument on r <= 0, polar
// outside [0, pi] or non-finite input.
SphericalPos MakeSpherical(double azimuth, double polar, double radius);

Vec3 SphToCart(const SphericalPos& p, bool unit = false);
// Throws DegenerateInput for the zero vector.
SphericalPos CartToSph(const Vec3& v);
double EuclideanDist(const Vec3& a, const Vec3& b);

struct Microphone {
  std::string id;
  SphericalPos pos;
};

struct MicArrayGeometry {
  std::vector<Microphone> mics;
  double nominal_radius = 1.0;

  std::size_t size() const { return mics.size(); }
  // Non-empty, unique ids, valid positions. Throws InvalidArgument.
  void Validate() const;
};

// Quasi-uniform sampling of a sphere (golden-angle spiral). Mic ids are
// "mic000", "mic001", ...
MicArrayGeometry FibonacciSphere(std::size_t count, double radius);

// Pose keypoints over time, in the same world frame as the mic array.
struct PoseTrack {
  double fps = 30.0;
  std::vector<std::string> joint_names;
  // frames[s][j] is joint j at pose frame s.
  std::vector<std::vector<Vec3>> frames;

  std::size_t num_frames() const { return frames.size(); }
  // Throws InvalidArgument when the joint is unknown.
  std::size_t JointIndex(const std::string& name) const;
  const Vec3& Joint(std::size_t frame, std::size_t joint) const {
    return frames[frame][joint];
  }
  void Validate() const;

  // A pose track holding one frame, repeated for `num_frames` frames.
  static PoseTrack Static(const std::map<std::string, Vec3>& joints,
                          std::size_t num_frames = 1, double fps = 30.0);
};

// Joints used as candidate sound sources by the time warping stage.
std::vector<std::string> DefaultWarpJoints();

}  // namespace soundfield
