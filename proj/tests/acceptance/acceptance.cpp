// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "soundfield/baseline.hpp"
#include "soundfield/codec.hpp"
#include "soundfield/geometry.hpp"
#include "soundfield/harmonics.hpp"
#include "soundfield/losses.hpp"
#include "soundfield/metrics.hpp"
#include "soundfield/sim.hpp"
#include "soundfield/stft.hpp"
#include "soundfield/timewarp.hpp"

using namespace soundfield;
namespace fs = std::filesystem;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::string Fmt(const char* fmt, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a);
  return buf;
}

std::string Fmt(const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

std::string Fmt(const char* fmt, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

double RelL2(std::span<const double> est, std::span<const double> ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += (est[i] - ref[i]) * (est[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

// Lag (in samples) that maximizes sum_t a[t] b[t + lag].
long XcorrPeak(const std::vector<double>& a, const std::vector<double>& b, long max_lag) {
  long best_lag = 0;
  double best = -std::numeric_limits<double>::infinity();
  const long n = static_cast<long>(a.size());
  for (long lag = -max_lag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (long t = 0; t < n; ++t) {
      const long u = t + lag;
      if (u >= 0 && u < n) acc += a[t] * b[u];
    }
    if (acc > best) best = acc, best_lag = lag;
  }
  return best_lag;
}

// ------------------------------------------------------------------------ 1

Verdict OrderLaw() {
  const int k = MaxOrder(345);
  return {k == 17, "max_order(345) = " + std::to_string(k) + ", expected 17", {}};
}

// ------------------------------------------------------------------------ 2

Verdict SpecialFunctions() {
  const cd i(0.0, 1.0);
  double worst_closed = 0.0;
  for (int s = 0; s <= 20000; ++s) {
    const double x = 0.1 + (50.0 - 0.1) * s / 20000.0;
    const cd h0 = -i * std::exp(i * x) / x;
    const cd h1 = -std::exp(i * x) * (x + i) / (x * x);
    worst_closed = std::max(worst_closed, std::abs(SphHankel(0, x) - h0) / std::abs(h0));
    worst_closed = std::max(worst_closed, std::abs(SphHankel(1, x) - h1) / std::abs(h1));
  }
  double worst_rec = 0.0;
  for (int s = 0; s <= 2000; ++s) {
    const double x = 0.1 + (50.0 - 0.1) * s / 2000.0;
    const auto h = SphHankelUpTo(21, x);
    for (int n = 1; n <= 20; ++n) {
      const cd rhs = (2.0 * n + 1.0) / x * h[n] - h[n - 1];
      worst_rec = std::max(worst_rec, std::abs(h[n + 1] - rhs) / std::abs(h[n + 1]));
    }
  }
  return {worst_closed <= 1e-10 && worst_rec < 1e-9,
          Fmt("closed-form rel err %.2e (<= 1e-10), recurrence residual %.2e (< 1e-9)",
              worst_closed, worst_rec),
          {}};
}

// ------------------------------------------------------------------------ 3

void GaussLegendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    double z = std::cos(kPi * (k + 0.75) / (n + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[k] = z;
    w[k] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

Verdict Orthonormality() {
  const int order = 6;
  const std::size_t q = NumCoefficients(order);
  std::vector<double> x, w;
  GaussLegendre(20, x, w);
  const int n_az = 20;
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(q, q);
  for (std::size_t a = 0; a < x.size(); ++a)
    for (int b = 0; b < n_az; ++b) {
      const auto y = SphHarmonicsUpTo(order, 2 * kPi * b / n_az, std::acos(x[a]));
      Eigen::Map<const Eigen::VectorXcd> v(y.data(), q);
      gram += (w[a] * 2 * kPi / n_az) * v * v.adjoint();
    }
  const double dev = (gram - Eigen::MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff();
  return {dev < 1e-8,
          Fmt("%.0f functions, max |G - I| = %.2e (< 1e-8)", double(q), dev), {}};
}

// ------------------------------------------------------------------------ 4

Verdict EncodeInverse() {
  const auto geom = FibonacciSphere(25, 1.7);
  const int order = 4;
  const StftConfig cfg{1024, 256, WindowKind::kHann, true};
  const std::size_t frames = 3;
  Spectrogram spec(25, frames, cfg, 48000.0, (frames - 1) * cfg.hop);
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXcd> beta0(spec.num_bins * frames);
  std::vector<bool> tested(spec.num_bins, false);
  for (std::size_t f = 1; f < spec.num_bins; ++f) {
    const Eigen::MatrixXcd t = BuildTransferMatrix(geom, spec.BinFrequency(f), order);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
    const auto sv = svd.singularValues();
    tested[f] = sv[0] / sv[sv.size() - 1] < 1e6;
    for (std::size_t fr = 0; fr < frames; ++fr) {
      auto& b = beta0[fr * spec.num_bins + f];
      b.resize(t.cols());
      for (auto& v : b) v = {g(gen), g(gen)};
      const Eigen::VectorXcd s = t * b;
      for (std::size_t c = 0; c < 25; ++c) spec.at(c, fr, f) = s[c];
    }
  }
  EncoderConfig enc;
  enc.order = order;
  enc.solve = SolveMode::kExactSvd;
  const auto coeffs = Encode(spec, geom, enc);
  double worst = 0.0;
  std::size_t count = 0;
  for (std::size_t f = 1; f < spec.num_bins; ++f) {
    if (!tested[f]) continue;
    ++count;
    for (std::size_t fr = 0; fr < frames; ++fr) {
      const auto& b = beta0[fr * spec.num_bins + f];
      double num = 0.0;
      for (std::size_t k = 0; k < static_cast<std::size_t>(b.size()); ++k)
        num += std::norm(coeffs.at(k, fr, f) - b[k]);
      worst = std::max(worst, std::sqrt(num) / b.norm());
    }
  }
  return {count > 0 && worst <= 1e-6,
          Fmt("%.0f of %.0f bins with cond(T) < 1e6, max rel err %.2e (<= 1e-6)",
              double(count), double(spec.num_bins - 1), worst),
          {}};
}

// ------------------------------------------------------------------------ 5

struct RoundTrip {
  double mic_mean = 0.0, mic_worst = 0.0, held_worst = 0.0, held_min_sdr = 0.0;
};

RoundTrip PhysicalRoundTrip(const Vec3& source) {
  const double rate = 48000.0, radius = 1.7;
  SimScene scene;
  scene.interp = DelayInterp::kWindowedSinc;
  scene.sources.push_back(SimSource::Static(BandLimitedNoise(24000, rate, 300, 1500, 5), source));
  const auto geom = FibonacciSphere(64, radius);
  const auto mics = SimulateArray(scene, geom);
  EncoderConfig enc;
  enc.order = 6;
  const auto coeffs = Encode(Stft(mics, {}), geom, enc);

  RoundTrip r;
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const double e = RelL2(Render(coeffs, geom.mics[i].pos).channel(0), mics.channel(i));
    r.mic_mean += e / static_cast<double>(geom.size());
    r.mic_worst = std::max(r.mic_worst, e);
  }
  r.held_min_sdr = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 8; ++k) {
    const double polar = std::acos(1.0 - (2.0 * k + 1.0) / 8.0);
    const auto pos = MakeSpherical(std::fmod(0.7 + 2.39996 * k, 2 * kPi), polar, radius);
    const auto est = Render(coeffs, pos);
    const auto truth = SimulateReceiver(scene, SphToCart(pos));
    r.held_worst = std::max(r.held_worst, RelL2(est.channel(0), truth.channel(0)));
    r.held_min_sdr = std::min(r.held_min_sdr, Sdr(est, truth));
  }
  return r;
}

Verdict PhysicalRoundTripCriterion() {
  const auto r = PhysicalRoundTrip({0.3, 0.0, 0.0});
  Verdict v;
  v.pass = r.mic_worst <= 0.05 && r.held_worst <= 0.10 && r.held_min_sdr >= 20.0;
  v.detail = Fmt("source 0.3 m off-center: mic rel l2 worst %.3f (mean %.3f, <= 0.05), ",
                 r.mic_worst, r.mic_mean) +
             Fmt("held-out rel l2 worst %.3f (<= 0.10), min SDR %.1f dB (>= 20)",
                 r.held_worst, r.held_min_sdr);
  const auto c = PhysicalRoundTrip({0.1, 0.0, 0.0});
  v.notes.push_back(
      Fmt("same pipeline, source 0.1 m off-center: mic worst %.4f, held-out worst %.4f, ",
          c.mic_worst, c.held_worst) +
      Fmt("min SDR %.1f dB", c.held_min_sdr));
  v.notes.push_back(
      "an order-6 truncation cannot represent a source 0.3 m off-center at 1500 Hz on a "
      "1.7 m sphere (k r_s = 8.2 > 6), so the residual is modeling error, not solver error");
  return v;
}

// ------------------------------------------------------------------------ 6

double PopStd(std::span<const double> x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(x.size()));
}

// Direct triple loop over segments n, offsets tau, samples t.
std::vector<double> ShiftL2BruteForce(const std::vector<double>& est,
                                      const std::vector<double>& ref, std::size_t L,
                                      double alpha, double delta, bool clip_sigma) {
  const long n_total = static_cast<long>(ref.size());
  const long l = static_cast<long>(L);
  const double clip_r = PopStd(ref), clip_e = PopStd(est);
  std::vector<double> out;
  for (std::size_t n = 0; n < est.size() / L; ++n) {
    const std::span<const double> rs(ref.data() + n * L, L), es(est.data() + n * L, L);
    const double sr = clip_sigma ? clip_r : PopStd(rs);
    const double se = clip_sigma ? clip_e : PopStd(es);
    const double den = std::sqrt(sr * std::min(sr, se)) + delta;
    double best = std::numeric_limits<double>::infinity();
    for (long tau = -l; tau <= l; ++tau) {
      // symmetric Blackman of length 2L + 1, evaluated on its left half
      const long k = l - std::labs(tau);
      const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(2 * L);
      double w = std::max(0.0, 0.42 - 0.5 * std::cos(a) + 0.08 * std::cos(2.0 * a));
      if (tau == 0) w = 1.0;
      if (k == 0) w = 0.0;
      double acc = 0.0;
      for (long t = 0; t < l; ++t) {
        const long idx = static_cast<long>(n * L) + t + tau;
        const double r = (idx >= 0 && idx < n_total) ? ref[idx] : 0.0;
        const double q = (est[n * L + t] - r) / den;
        acc += q * q;
      }
      const double l2 = acc / static_cast<double>(L);
      best = std::min(best, (l2 + 1.0) * (alpha * (1.0 - w) + 1.0) - 1.0);
    }
    out.push_back(best);
  }
  return out;
}

Verdict ShiftL2Exactness() {
  const std::size_t L = 128, segs = 256, n = L * segs;
  ShiftL2Config cfg;  // L = 128, alpha = 100, delta = 0.001
  bool ok = true;
  std::vector<std::string> notes;

  std::mt19937_64 gen(6);
  std::normal_distribution<double> g;
  std::vector<double> noise(16 * L);
  for (double& v : noise) v = g(gen);
  const double same = ShiftL2(AudioBuffer::Mono(noise), AudioBuffer::Mono(noise), cfg);
  ok &= same == 0.0;

  cfg.sigma_scope = SigmaScope::kClip;
  std::size_t mismatches = 0;
  double worst_rel = 0.0, prev = -1.0;
  bool monotone = true;
  std::string sweep;
  for (std::size_t tau0 : {0u, 8u, 32u, 64u, 128u}) {
    std::vector<double> ref(n, 0.0), est(n, 0.0);
    const std::size_t p = 100 * L;
    ref[p] = 1.0;
    est[p + tau0] = 1.0;
    const auto fast = ShiftL2Segments(est, ref, cfg);
    const auto slow = ShiftL2BruteForce(est, ref, L, cfg.alpha, cfg.delta, true);
    for (std::size_t s = 0; s < fast.size(); ++s) mismatches += fast[s] != slow[s];
    const double got = fast[(p + tau0) / L];
    const double k = 2.0 * kPi * static_cast<double>(L - tau0) / static_cast<double>(2 * L);
    const double want = cfg.alpha * (1.0 - (0.42 - 0.5 * std::cos(k) + 0.08 * std::cos(2 * k)));
    if (tau0 == 0)
      ok &= got == 0.0;
    else
      worst_rel = std::max(worst_rel, std::abs(got - want) / want);
    monotone &= got >= prev;
    prev = got;
    sweep += Fmt(" %.0f:%.4g", double(tau0), got);
  }

  // segment-scope sigma on random signals
  for (unsigned seed = 0; seed < 4; ++seed) {
    std::vector<double> ref(8 * L), est(8 * L);
    for (double& v : ref) v = g(gen);
    for (std::size_t i = 0; i < est.size(); ++i) est[i] = 0.3 * g(gen) + ref[(i + 5 * seed) % ref.size()];
    ShiftL2Config seg;
    const auto fast = ShiftL2Segments(est, ref, seg);
    const auto slow = ShiftL2BruteForce(est, ref, L, seg.alpha, seg.delta, false);
    for (std::size_t s = 0; s < fast.size(); ++s) mismatches += fast[s] != slow[s];
  }

  ok &= mismatches == 0 && worst_rel <= 0.01 && monotone;
  notes.push_back("sweep tau0:value" + sweep + " (clip-wide sigma, 256 segments)");
  return {ok,
          Fmt("identical -> %.1f, brute-force mismatches %.0f (bit-exact), closed form rel err %.2e (<= 1%%)",
              same, double(mismatches), worst_rel),
          notes};
}

// ------------------------------------------------------------------------ 7

Verdict LossCombination() {
  const auto ref = BandLimitedNoise(9600, 48000, 50, 16000, 71);
  const auto est = BandLimitedNoise(9600, 48000, 50, 16000, 72);
  const MsStftConfig ms;
  const auto rep = CombinedLoss(est, ref);
  bool ok = rep.combined == rep.shift_l2 + 100.0 * rep.ms_stft;
  ok &= ms.weight == 100.0 && ms.windows == std::vector<std::size_t>{256, 128, 64, 32};

  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  double worst = 0.0;
  for (std::size_t win : ms.windows) {
    const auto r = Stft(ref, {win, win / 4, WindowKind::kHann, true});
    auto e = r;
    for (auto& v : e.values) v = std::polar(std::abs(v), ph(gen));
    worst = std::max(worst, StftMagnitudeLoss(e, r).sum());
  }
  AudioBuffer neg = ref;
  for (double& v : neg.channels[0]) v = -v;
  worst = std::max(worst, MultiscaleStftLoss(neg, ref));
  ok &= worst < 1e-6;
  return {ok,
          Fmt("combined - (shift_l2 + 100 ms_stft) = %.1e, scrambled-phase ms_stft %.2e (< 1e-6)",
              rep.combined - (rep.shift_l2 + 100.0 * rep.ms_stft), worst),
          {}};
}

// ------------------------------------------------------------------------ 8

Verdict Metrics() {
  const auto ref = BandLimitedNoise(48000, 48000, 50, 8000, 81);
  const auto noise = BandLimitedNoise(48000, 48000, 50, 20000, 82);
  double er = 0.0, en = 0.0;
  for (double v : ref.channels[0]) er += v * v;
  for (double v : noise.channels[0]) en += v * v;
  AudioBuffer est = ref;
  const double scale = std::sqrt(er / (10.0 * en));
  for (std::size_t i = 0; i < est.num_samples(); ++i) est.channels[0][i] += scale * noise.channels[0][i];
  const double sdr_err = std::abs(Sdr(est, ref) - 10.0);

  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> ph(-kPi, kPi), mag(0.05, 1.0);
  const StftConfig cfg{256, 64, WindowKind::kHann, true};
  double mc = 0.0;
  const int trials = 50;
  for (int k = 0; k < trials; ++k) {
    Spectrogram a(1, 60, cfg, 48000.0, 59 * 64), b = a;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      a.values[i] = std::polar(mag(gen), ph(gen));
      b.values[i] = std::polar(mag(gen), ph(gen));
    }
    mc += PhaseError(a, b) / trials;
  }
  AudioBuffer anti = ref;
  for (double& v : anti.channels[0]) v = -v;
  const double anti_err = PhaseError(anti, ref);

  Spectrogram r = Stft(ref, {}), e = r;
  for (auto& v : e.values) v = std::polar(std::abs(v), ph(gen));
  const double amp = AmplitudeError(e, r);

  const bool ok = sdr_err <= 1e-9 && std::abs(mc - kPi / 2) <= 0.02 &&
                  std::abs(anti_err - kPi) < 1e-9 && amp <= 1e-9;
  return {ok,
          Fmt("|SDR - 10| = %.1e, uncorrelated phase %.4f (pi/2 +- 0.02), ", sdr_err, mc) +
              Fmt("anti-phase %.6f (pi), amplitude under phase scramble %.1e", anti_err, amp),
          {}};
}

// ------------------------------------------------------------------------ 9

Verdict WarpAlignment() {
  const Vec3 nose{0.0, 0.0, 1.6};
  const Vec3 hand = nose + Vec3{0.48, 0.0, -0.64};  // 0.8 m from the nose
  const Vec3 target = SphToCart(MakeSpherical(0.9, 1.2, 1.7));
  std::vector<double> imp(9600, 0.0);
  imp[2000] = 1.0;
  SimScene scene;
  scene.interp = DelayInterp::kWindowedSinc;
  scene.sources.push_back(SimSource::Static(AudioBuffer::Mono(imp), hand));
  const auto at_nose = SimulateReceiver(scene, nose);
  const auto at_target = SimulateReceiver(scene, target);
  const auto pose = PoseTrack::Static({{"nose", nose}, {"left_hand", hand}});
  const auto wf = ComputeWarpfield(pose, {"left_hand", "nose", target, 343.0, 48000.0, 9600});
  const auto warped = ApplyWarp(at_nose, wf);
  const long lag = XcorrPeak(warped.channels[0], at_target.channels[0], 400);
  const long raw = XcorrPeak(at_nose.channels[0], at_target.channels[0], 400);

  std::mt19937_64 gen(10);
  std::normal_distribution<double> step(0.0, 0.03);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    PoseTrack p;
    p.joint_names = {"nose", "left_hand"};
    Vec3 a{u(gen), u(gen), 1.5 + 0.2 * u(gen)}, b = a + Vec3{0.3, 0.2, -0.5};
    for (int s = 0; s < 8; ++s) {
      p.frames.push_back({a, b});
      a = a + Vec3{step(gen), step(gen), step(gen)};
      b = b + Vec3{5 * step(gen), 5 * step(gen), 5 * step(gen)};
    }
    const Vec3 t{u(gen), u(gen), u(gen)};
    const auto f = ComputeWarpfield(p, {"left_hand", "nose", t, 343.0, 48000.0, 8 * 1600});
    violations += f.rho[0] < 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) violations += f.rho[i] < f.rho[i - 1];
  }
  return {std::labs(lag) <= 1 && violations == 0,
          "warped lag " + std::to_string(lag) + " (0 +- 1; unwarped " + std::to_string(raw) +
              "), monotonicity violations " + std::to_string(violations) + " over 1000 tracks",
          {}};
}

// ----------------------------------------------------------------------- 10

Verdict BaselineRegime() {
  const Vec3 nose{0.1, -0.2, 1.6};
  const Vec3 hand = nose + Vec3{0.0, 0.48, -0.64};
  const Vec3 target = SphToCart(MakeSpherical(2.1, 1.4, 1.7));
  const auto src = BandLimitedNoise(24000, 48000, 100, 4000, 101);
  const auto pose = PoseTrack::Static({{"nose", nose}, {"left_hand", hand}});

  // The windowed-sinc simulator is the reference; the default linear one
  // shares the warp's interpolation and is reported alongside.
  SimScene at_nose;
  at_nose.sources.push_back(SimSource::Static(src, nose));
  const auto base = NaiveSpatialize(src, pose, target);
  const double err_linear = RelL2(base.channel(0), SimulateReceiver(at_nose, target).channel(0));
  at_nose.interp = DelayInterp::kWindowedSinc;
  const double err = RelL2(base.channel(0), SimulateReceiver(at_nose, target).channel(0));

  SimScene at_hand;
  at_hand.interp = DelayInterp::kWindowedSinc;
  at_hand.sources.push_back(SimSource::Static(src, hand));
  const auto head_mic = SimulateReceiver(at_hand, nose);
  const auto truth = SimulateReceiver(at_hand, target);
  const auto misaligned = NaiveSpatialize(head_mic, pose, target);
  const double predicted = (EuclideanDist(target, nose) + EuclideanDist(nose, hand) -
                            EuclideanDist(target, hand)) / 343.0 * 48000.0;
  const long lag = XcorrPeak(truth.channels[0], misaligned.channels[0], 600);
  const long want = std::lround(predicted);
  return {err <= 0.01 && lag == want,
          Fmt("source at nose: rel l2 %.4f vs sinc oracle (<= 0.01); ", err) +
              "source at hand: lag " + std::to_string(lag) + " samples, predicted " +
              Fmt("%.2f", predicted) + " -> " + std::to_string(want),
          {Fmt("nose case against the linear-interpolation simulator: rel l2 %.1e", err_linear)}};
}

// ----------------------------------------------------------------------- 11

int RunCli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SOUNDFIELD_CLI_PATH + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict Determinism() {
  const fs::path root = fs::temp_directory_path() / "soundfield_acceptance_demo";
  fs::remove_all(root);
  const fs::path a = root / "a", b = root / "b";
  const int ca = RunCli("demo --duration 0.25 --out " + a.string(), "SOUNDFIELD_THREADS=1");
  const int cb = RunCli("demo --duration 0.25 --out " + b.string(), "SOUNDFIELD_THREADS=4");
  std::size_t files = 0, wavs = 0, jsons = 0, differing = 0;
  if (ca == 0 && cb == 0) {
    for (const auto& e : fs::recursive_directory_iterator(a)) {
      if (!e.is_regular_file()) continue;
      ++files;
      const auto ext = e.path().extension().string();
      wavs += ext == ".wav";
      jsons += ext == ".json";
      const auto other = b / fs::relative(e.path(), a);
      differing += !fs::exists(other) || Slurp(e.path()) != Slurp(other);
    }
  }
  fs::remove_all(root);
  return {ca == 0 && cb == 0 && files > 0 && wavs > 0 && jsons > 0 && differing == 0,
          "exit codes " + std::to_string(ca) + "/" + std::to_string(cb) + ", " +
              std::to_string(files) + " files (" + std::to_string(wavs) + " WAV, " +
              std::to_string(jsons) + " JSON) compared across 1 and 4 threads, " +
              std::to_string(differing) + " differ",
          {}};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"order law", OrderLaw},
      {"special functions", SpecialFunctions},
      {"harmonic orthonormality", Orthonormality},
      {"algebraic encode inverse", EncodeInverse},
      {"physical round trip", PhysicalRoundTripCriterion},
      {"shift-l2 exactness", ShiftL2Exactness},
      {"loss combination", LossCombination},
      {"metrics", Metrics},
      {"warp alignment", WarpAlignment},
      {"baseline exactness regime", BaselineRegime},
      {"end-to-end determinism", Determinism},
  };
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what(), {}};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    passed += v.pass;
    std::printf("[%s] %2zu %-26s %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, v.detail.c_str(), secs);
    for (const auto& note : v.notes) std::printf("       %2s %-26s note: %s\n", "", "", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
