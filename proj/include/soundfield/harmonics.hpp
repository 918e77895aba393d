// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace soundfield {

inline constexpr int kMaxHarmonicOrder = 64;

// (order n, degree m) with |m| <= n, flattened as n^2 + n + m.
struct HarmonicIndex {
  int n = 0;
  int m = 0;

  std::size_t Flat() const { return static_cast<std::size_t>(n * n + n + m); }
  static HarmonicIndex FromFlat(std::size_t flat);
};

// Number of coefficients up to and including order K.
inline std::size_t NumCoefficients(int order) {
  return static_cast<std::size_t>((order + 1) * (order + 1));
}

// Complex orthonormal spherical harmonic with Condon-Shortley phase,
// azimuth theta, colatitude phi. Throws InvalidArgument when |m| > n.
std::complex<double> SphHarmonic(int n, int m, double azimuth, double polar);

// All Y_nm for n <= order, in flat order. Shares the recurrence with
// SphHarmonic, so Y_{n,-m} = (-1)^m conj(Y_nm) holds exactly.
std::vector<std::complex<double>> SphHarmonicsUpTo(int order, double azimuth,
                                                   double polar);

// Spherical Bessel function of the first kind, x >= 0.
double SphBesselJ(int n, double x);
// j_0 .. j_order at x, computed together.
std::vector<double> SphBesselJUpTo(int order, double x);

// Spherical Bessel function of the second kind, x > 0.
double SphBesselY(int n, double x);
std::vector<double> SphBesselYUpTo(int order, double x);

// Spherical Hankel function of the first kind h_n = j_n + i y_n.
// Throws DomainError for x <= 0.
std::complex<double> SphHankel(int n, double x);
std::vector<std::complex<double>> SphHankelUpTo(int order, double x);

}  // namespace soundfield
