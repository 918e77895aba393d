// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "soundfield/error.hpp"

namespace soundfield {

namespace {

void CheckOrder(int order) {
  if (order < 0 || order > kMaxHarmonicOrder)
    throw InvalidArgument("harmonic order must lie in [0, " +
                          std::to_string(kMaxHarmonicOrder) + "], got " +
                          std::to_string(order));
}

double J0(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

double J1(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x / 3.0 - x * x2 / 30.0 + x * x2 * x2 / 840.0;
  }
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

}  // namespace

HarmonicIndex HarmonicIndex::FromFlat(std::size_t flat) {
  int n = static_cast<int>(std::sqrt(static_cast<double>(flat)));
  while (static_cast<std::size_t>(n * n) > flat) --n;
  while (static_cast<std::size_t>((n + 1) * (n + 1)) <= flat) ++n;
  return {n, static_cast<int>(flat) - n * n - n};
}

std::vector<std::complex<double>> SphHarmonicsUpTo(int order, double azimuth,
                                                   double polar) {
  CheckOrder(order);
  const std::size_t count = NumCoefficients(order);
  std::vector<std::complex<double>> out(count);
  const double x = std::cos(polar);
  const double s = std::sin(polar);

  // Fully normalized associated Legendre functions (including 1/sqrt(4 pi)
  // and the Condon-Shortley phase), column by column in m. The recurrences
  // never form factorials, so nothing overflows for n <= 64.
  double pmm = 0.5 / std::sqrt(std::numbers::pi);
  for (int m = 0; m <= order; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    const std::complex<double> phase = std::polar(1.0, m * azimuth);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;

    double p_prev2 = 0.0;
    double p_prev = pmm;
    for (int n = m; n <= order; ++n) {
      double p;
      if (n == m) {
        p = pmm;
      } else if (n == m + 1) {
        p = std::sqrt(2.0 * m + 3.0) * x * pmm;
      } else {
        const double nn = n, mm = m;
        const double a = std::sqrt((4.0 * nn * nn - 1.0) / (nn * nn - mm * mm));
        const double b = std::sqrt(((nn - 1.0) * (nn - 1.0) - mm * mm) /
                                   (4.0 * (nn - 1.0) * (nn - 1.0) - 1.0));
        p = a * (x * p_prev - b * p_prev2);
      }
      if (n > m) {
        p_prev2 = p_prev;
        p_prev = p;
      }
      const std::complex<double> y = p * phase;
      out[HarmonicIndex{n, m}.Flat()] = y;
      if (m > 0) out[HarmonicIndex{n, -m}.Flat()] = sign * std::conj(y);
    }
  }
  return out;
}

std::complex<double> SphHarmonic(int n, int m, double azimuth, double polar) {
  if (std::abs(m) > n)
    throw InvalidArgument("spherical harmonic degree |m| must not exceed n");
  return SphHarmonicsUpTo(n, azimuth, polar)[HarmonicIndex{n, m}.Flat()];
}

std::vector<double> SphBesselJUpTo(int order, double x) {
  CheckOrder(order);
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("spherical Bessel argument must be finite and >= 0");
  std::vector<double> j(static_cast<std::size_t>(order) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  j[0] = J0(x);
  if (order == 0) return j;
  j[1] = J1(x);

  if (x >= static_cast<double>(order)) {
    // Upward recurrence is stable while n < x.
    for (int n = 1; n < order; ++n)
      j[n + 1] = (2.0 * n + 1.0) / x * j[n] - j[n - 1];
    return j;
  }

  // Miller's downward recurrence from well above max(order, x), normalized
  // against whichever closed form is larger in magnitude.
  const double top = std::max(static_cast<double>(order), x);
  const int start = static_cast<int>(top) + 16 +
                    static_cast<int>(std::sqrt(40.0 * top));
  constexpr double kBig = 1e200;
  std::vector<double> f(j.size(), 0.0);
  double f_next = 0.0;
  double f_cur = 1e-300;
  for (int n = start; n > 0; --n) {
    const double f_prev = (2.0 * n + 1.0) / x * f_cur - f_next;
    f_next = f_cur;
    f_cur = f_prev;
    if (n - 1 <= order) f[n - 1] = f_cur;
    if (n <= order) f[n] = f_next;
    if (std::abs(f_cur) > kBig) {
      f_cur /= kBig;
      f_next /= kBig;
      for (auto& v : f) v /= kBig;
    }
  }
  const double scale =
      std::abs(j[0]) >= std::abs(j[1]) ? j[0] / f[0] : j[1] / f[1];
  for (std::size_t n = 0; n < j.size(); ++n) j[n] = f[n] * scale;
  return j;
}

double SphBesselJ(int n, double x) { return SphBesselJUpTo(n, x)[n]; }

std::vector<double> SphBesselYUpTo(int order, double x) {
  CheckOrder(order);
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("spherical Neumann argument must be finite and > 0");
  std::vector<double> y(static_cast<std::size_t>(order) + 1);
  const double c = std::cos(x), s = std::sin(x);
  y[0] = -c / x;
  if (order >= 1) y[1] = -c / (x * x) - s / x;
  for (int n = 1; n < order; ++n)
    y[n + 1] = (2.0 * n + 1.0) / x * y[n] - y[n - 1];
  return y;
}

double SphBesselY(int n, double x) { return SphBesselYUpTo(n, x)[n]; }

std::vector<std::complex<double>> SphHankelUpTo(int order, double x) {
  if (!(x > 0.0))
    throw DomainError("spherical Hankel function is singular at x <= 0");
  const auto j = SphBesselJUpTo(order, x);
  const auto y = SphBesselYUpTo(order, x);
  std::vector<std::complex<double>> h(j.size());
  for (std::size_t n = 0; n < h.size(); ++n) h[n] = {j[n], y[n]};
  return h;
}

std::complex<double> SphHankel(int n, double x) {
  return SphHankelUpTo(n, x)[n];
}

}  // namespace soundfield
