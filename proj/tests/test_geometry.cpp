// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "soundfield/error.hpp"
#include "soundfield/geometry.hpp"

using namespace soundfield;
constexpr double kPi = std::numbers::pi;

TEST_CASE("sph_to_cart maps the axes") {
  const Vec3 x = SphToCart(MakeSpherical(0.0, kPi / 2, 2.0), true);
  CHECK(x.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(x.y) < 1e-15);
  CHECK(std::abs(x.z) < 1e-15);

  for (double az : {0.0, 1.0, 4.0}) {
    const Vec3 pole = SphToCart({az, 0.0, 3.0}, true);
    CHECK(pole.z == 1.0);
    CHECK(std::abs(pole.x) < 1e-15);
  }

  const Vec3 y = SphToCart(MakeSpherical(kPi / 2, kPi / 2, 1.0), true);
  CHECK(std::abs(y.x) < 1e-15);
  CHECK(y.y == doctest::Approx(1.0));

  const Vec3 scaled = SphToCart(MakeSpherical(0.0, kPi / 2, 2.5));
  CHECK(scaled.x == doctest::Approx(2.5));
}

TEST_CASE("cart_to_sph canonical values") {
  const SphericalPos pole = CartToSph({0, 0, 2});
  CHECK(pole.azimuth == 0.0);
  CHECK(pole.polar == 0.0);
  CHECK(pole.radius == 2.0);

  const SphericalPos south = CartToSph({0, 0, -1});
  CHECK(south.polar == doctest::Approx(kPi));
  CHECK(south.azimuth == 0.0);

  const SphericalPos x = CartToSph({1, 0, 0});
  CHECK(x.azimuth == 0.0);
  CHECK(x.polar == doctest::Approx(kPi / 2));
  CHECK(x.radius == 1.0);

  const SphericalPos neg_y = CartToSph({0, -1, 0});
  CHECK(neg_y.azimuth == doctest::Approx(1.5 * kPi));

  CHECK_THROWS_AS(CartToSph({0, 0, 0}), DegenerateInput);
}

TEST_CASE("round trip and unit norm on random points") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::lognormal_distribution<double> scale(0.0, 3.0);
  for (int i = 0; i < 20000; ++i) {
    const double s = scale(gen);
    const Vec3 v{s * u(gen), s * u(gen), s * u(gen)};
    const SphericalPos p = CartToSph(v);
    CHECK(p.azimuth >= 0.0);
    CHECK(p.azimuth < 2 * kPi);
    CHECK(p.polar >= 0.0);
    CHECK(p.polar <= kPi);
    const Vec3 back = SphToCart(p);
    REQUIRE(EuclideanDist(back, v) <= 1e-12 * v.Norm());
    CHECK(std::abs(SphToCart(p, true).Norm() - 1.0) <= 1e-14);
  }
}

TEST_CASE("euclidean distance") {
  CHECK(EuclideanDist({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(EuclideanDist({0, 0, 0}, {3, 4, 0}) == 5.0);

  std::mt19937_64 gen(3);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int i = 0; i < 5000; ++i) {
    const Vec3 a{n(gen), n(gen), n(gen)}, b{n(gen), n(gen), n(gen)},
        c{n(gen), n(gen), n(gen)};
    CHECK(EuclideanDist(a, b) == EuclideanDist(b, a));
    CHECK(EuclideanDist(a, c) <=
          EuclideanDist(a, b) + EuclideanDist(b, c) + 1e-12);
    CHECK(EuclideanDist(a, b) > 0.0);
  }
}

TEST_CASE("MakeSpherical validates and canonicalizes") {
  CHECK(MakeSpherical(-kPi / 2, 1.0, 1.0).azimuth ==
        doctest::Approx(1.5 * kPi));
  CHECK(MakeSpherical(7.0, 1.0, 1.0).azimuth ==
        doctest::Approx(7.0 - 2 * kPi));
  CHECK(MakeSpherical(2.0, 0.0, 1.0).azimuth == 0.0);
  CHECK_THROWS_AS(MakeSpherical(0.0, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(MakeSpherical(0.0, -0.1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(MakeSpherical(0.0, 3.2, 1.0), InvalidArgument);
  CHECK_THROWS_AS(MakeSpherical(NAN, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("mic arrays") {
  const auto geom = FibonacciSphere(64, 1.7);
  CHECK(geom.size() == 64);
  CHECK(geom.mics.front().id == "mic000");
  geom.Validate();
  for (const auto& m : geom.mics) CHECK(m.pos.radius == 1.7);

  MicArrayGeometry dup = geom;
  dup.mics[3].id = dup.mics[4].id;
  CHECK_THROWS_AS(dup.Validate(), InvalidArgument);
  CHECK_THROWS_AS(MicArrayGeometry{}.Validate(), InvalidArgument);
}

TEST_CASE("pose tracks") {
  const auto pose = PoseTrack::Static({{"nose", {0, 0, 1.6}}, {"hip", {0, 0, 1}}}, 3);
  pose.Validate();
  CHECK(pose.num_frames() == 3);
  CHECK(pose.Joint(2, pose.JointIndex("nose")).z == 1.6);
  CHECK_THROWS_AS(pose.JointIndex("tail"), InvalidArgument);

  PoseTrack ragged = pose;
  ragged.frames[1].pop_back();
  CHECK_THROWS_AS(ragged.Validate(), InvalidArgument);
  PoseTrack bad_fps = pose;
  bad_fps.fps = 0.0;
  CHECK_THROWS_AS(bad_fps.Validate(), InvalidArgument);

  CHECK(DefaultWarpJoints().size() == 6);
}
