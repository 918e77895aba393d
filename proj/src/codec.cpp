// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/codec.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>

#include <nlohmann/json.hpp>

#include "soundfield/error.hpp"
#include "soundfield/harmonics.hpp"
#include "soundfield/parallel.hpp"

namespace soundfield {

std::string ToString(DcPolicy policy) {
  return policy == DcPolicy::kZero ? "zero" : "copy_bin1";
}

DcPolicy ParseDcPolicy(const std::string& name) {
  if (name == "zero") return DcPolicy::kZero;
  if (name == "copy_bin1") return DcPolicy::kCopyBin1;
  throw InvalidArgument("unknown DC policy '" + name + "'");
}

void SoundFieldCoeffs::Validate() const {
  if (order < 0 || order > kMaxHarmonicOrder)
    throw InvalidArgument("coefficient order out of range");
  if (num_bins != stft.num_bins())
    throw InvalidArgument("coefficient bin count does not match STFT config");
  if (beta.size() != num_coefficients() * num_frames * num_bins)
    throw InvalidArgument("coefficient tensor size does not match header");
  if (!(radius > 0.0) || !(v_sound > 0.0) || !(sample_rate > 0.0))
    throw InvalidArgument("coefficient header has non-positive parameters");
}

int MaxOrder(std::size_t num_mics) {
  if (num_mics == 0) throw InvalidArgument("need at least one microphone");
  std::size_t root = static_cast<std::size_t>(std::sqrt(static_cast<double>(num_mics)));
  while (root * root > num_mics) --root;
  while ((root + 1) * (root + 1) <= num_mics) ++root;
  return static_cast<int>(root) - 1;
}

namespace {

double WaveNumber(double freq_hz, double v_sound) {
  return 2.0 * std::numbers::pi * freq_hz / v_sound;
}

// Row of radial * angular weights for one position and wave number.
Eigen::VectorXcd FieldWeights(int order, double k, const SphericalPos& pos) {
  const auto h = SphHankelUpTo(order, k * pos.radius);
  const auto y = SphHarmonicsUpTo(order, pos.azimuth, pos.polar);
  Eigen::VectorXcd w(static_cast<Eigen::Index>(y.size()));
  for (std::size_t flat = 0; flat < y.size(); ++flat)
    w(static_cast<Eigen::Index>(flat)) =
        h[static_cast<std::size_t>(HarmonicIndex::FromFlat(flat).n)] * y[flat];
  return w;
}

// Maps observations to coefficients: (K+1)^2 x N.
Eigen::MatrixXcd SolverMatrix(const Eigen::MatrixXcd& t,
                              const EncoderConfig& cfg) {
  if (cfg.solve == SolveMode::kExactSvd) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(t,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double tol = std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max(t.rows(), t.cols())) *
                       (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::VectorXd inv = sv;
    for (Eigen::Index i = 0; i < inv.size(); ++i)
      inv(i) = sv(i) > tol ? 1.0 / sv(i) : 0.0;
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  }
  Eigen::MatrixXcd gram = t.adjoint() * t;
  double lambda = 0.0;
  if (cfg.tikhonov_rel > 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram,
                                                        Eigen::EigenvaluesOnly);
    lambda = cfg.tikhonov_rel * eig.eigenvalues().maxCoeff();
  }
  gram.diagonal().array() += lambda;
  return gram.ldlt().solve(t.adjoint());
}

}  // namespace

Eigen::MatrixXcd BuildTransferMatrix(const MicArrayGeometry& geom,
                                     double freq_hz, int order,
                                     double v_sound) {
  if (!(freq_hz > 0.0))
    throw DomainError("transfer matrix needs a positive frequency");
  if (!(v_sound > 0.0)) throw InvalidArgument("speed of sound must be positive");
  const double k = WaveNumber(freq_hz, v_sound);
  Eigen::MatrixXcd t(static_cast<Eigen::Index>(geom.size()),
                     static_cast<Eigen::Index>(NumCoefficients(order)));
  for (std::size_t i = 0; i < geom.size(); ++i)
    t.row(static_cast<Eigen::Index>(i)) =
        FieldWeights(order, k, geom.mics[i].pos).transpose();
  return t;
}

SoundFieldCoeffs Encode(const Spectrogram& mic_specs,
                        const MicArrayGeometry& geom, const EncoderConfig& cfg,
                        double v_sound) {
  geom.Validate();
  if (mic_specs.num_channels != geom.size())
    throw InvalidArgument("spectrogram has " +
                          std::to_string(mic_specs.num_channels) +
                          " channels but the array has " +
                          std::to_string(geom.size()) + " microphones");
  const int bound = MaxOrder(geom.size());
  const int order = cfg.order < 0 ? bound : cfg.order;
  if (order > bound)
    throw OrderTooHigh("order " + std::to_string(order) + " exceeds floor(sqrt(" +
                       std::to_string(geom.size()) + ")) - 1 = " +
                       std::to_string(bound));
  if (!(cfg.tikhonov_rel >= 0.0))
    throw InvalidArgument("tikhonov_rel must be >= 0");
  if (!(v_sound > 0.0)) throw InvalidArgument("speed of sound must be positive");

  SoundFieldCoeffs out;
  out.order = order;
  out.stft = mic_specs.config;
  out.sample_rate = mic_specs.sample_rate;
  out.radius = geom.nominal_radius;
  out.v_sound = v_sound;
  out.dc_policy = cfg.dc_policy;
  out.num_frames = mic_specs.num_frames;
  out.num_bins = mic_specs.num_bins;
  out.num_samples = mic_specs.num_samples;
  out.beta.assign(out.num_coefficients() * out.num_frames * out.num_bins, 0.0);

  const auto frames = static_cast<Eigen::Index>(mic_specs.num_frames);
  const auto mics = static_cast<Eigen::Index>(geom.size());
  // T(f) depends only on the bin; build and factor it once per bin.
  ParallelFor(mic_specs.num_bins, [&](std::size_t f) {
    if (f == 0) return;
    const auto t = BuildTransferMatrix(geom, mic_specs.BinFrequency(f), order,
                                       v_sound);
    const Eigen::MatrixXcd solver = SolverMatrix(t, cfg);
    Eigen::MatrixXcd obs(mics, frames);
    for (Eigen::Index i = 0; i < mics; ++i)
      for (Eigen::Index tau = 0; tau < frames; ++tau)
        obs(i, tau) = mic_specs.at(static_cast<std::size_t>(i),
                                   static_cast<std::size_t>(tau), f);
    const Eigen::MatrixXcd beta = solver * obs;
    for (Eigen::Index q = 0; q < beta.rows(); ++q)
      for (Eigen::Index tau = 0; tau < frames; ++tau)
        out.at(static_cast<std::size_t>(q), static_cast<std::size_t>(tau), f) =
            beta(q, tau);
  });

  if (cfg.dc_policy == DcPolicy::kCopyBin1 && out.num_bins > 1)
    for (std::size_t q = 0; q < out.num_coefficients(); ++q)
      for (std::size_t tau = 0; tau < out.num_frames; ++tau)
        out.at(q, tau, 0) = out.at(q, tau, 1);
  return out;
}

Spectrogram Decode(const SoundFieldCoeffs& coeffs, const SphericalPos& pos) {
  coeffs.Validate();
  if (!(pos.radius > 0.0))
    throw DomainError("cannot decode at r = 0 (Hankel singularity)");
  Spectrogram out(1, coeffs.num_frames, coeffs.stft, coeffs.sample_rate,
                  coeffs.num_samples);
  const std::size_t count = coeffs.num_coefficients();
  ParallelFor(coeffs.num_bins, [&](std::size_t f) {
    std::size_t src_bin = f;
    if (f == 0) {
      if (coeffs.dc_policy == DcPolicy::kZero || coeffs.num_bins < 2) return;
      src_bin = 1;
    }
    const double k = WaveNumber(out.BinFrequency(src_bin), coeffs.v_sound);
    const Eigen::VectorXcd w = FieldWeights(coeffs.order, k, pos);
    for (std::size_t tau = 0; tau < coeffs.num_frames; ++tau) {
      cdouble acc = 0.0;
      for (std::size_t q = 0; q < count; ++q)
        acc += coeffs.at(q, tau, f) * w(static_cast<Eigen::Index>(q));
      out.at(0, tau, f) = acc;
    }
  });
  return out;
}

AudioBuffer Render(const SoundFieldCoeffs& coeffs, const SphericalPos& pos) {
  return Istft(Decode(coeffs, pos));
}

// ---------------------------------------------------------------------------
// Container format

namespace {

constexpr char kMagic[4] = {'S', 'F', 'C', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 80;

std::uint32_t WindowCode(WindowKind kind) {
  switch (kind) {
    case WindowKind::kHann:
      return 0;
    case WindowKind::kBlackman:
      return 1;
    case WindowKind::kRect:
      return 2;
  }
  return 0;
}

template <typename T>
void Put(std::vector<unsigned char>& out, T v) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

template <typename T>
T Get(const std::vector<unsigned char>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size())
    throw FormatError("coefficient file truncated");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

std::vector<unsigned char> SerializeCoeffs(const SoundFieldCoeffs& coeffs) {
  coeffs.Validate();
  std::vector<unsigned char> out;
  out.reserve(kHeaderBytes + coeffs.beta.size() * 8);
  out.insert(out.end(), kMagic, kMagic + 4);
  Put<std::uint32_t>(out, kVersion);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(coeffs.order));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(coeffs.stft.window_size));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(coeffs.stft.hop));
  Put<std::uint32_t>(out, WindowCode(coeffs.stft.window));
  Put<std::uint32_t>(out, coeffs.stft.center ? 1u : 0u);
  Put<std::uint32_t>(out, coeffs.dc_policy == DcPolicy::kZero ? 0u : 1u);
  Put<double>(out, coeffs.sample_rate);
  Put<double>(out, coeffs.radius);
  Put<double>(out, coeffs.v_sound);
  Put<std::uint64_t>(out, coeffs.num_frames);
  Put<std::uint64_t>(out, coeffs.num_bins);
  Put<std::uint64_t>(out, coeffs.num_samples);
  for (const auto& v : coeffs.beta) {
    Put<float>(out, static_cast<float>(v.real()));
    Put<float>(out, static_cast<float>(v.imag()));
  }
  return out;
}

SoundFieldCoeffs DeserializeCoeffs(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw FormatError("not a sound field coefficient file");
  std::size_t pos = 4;
  if (Get<std::uint32_t>(bytes, pos) != kVersion)
    throw UnsupportedFormat("coefficient file version");
  SoundFieldCoeffs c;
  c.order = static_cast<int>(Get<std::uint32_t>(bytes, pos));
  c.stft.window_size = Get<std::uint32_t>(bytes, pos);
  c.stft.hop = Get<std::uint32_t>(bytes, pos);
  const auto window = Get<std::uint32_t>(bytes, pos);
  if (window > 2) throw FormatError("unknown window code");
  c.stft.window = window == 0   ? WindowKind::kHann
                  : window == 1 ? WindowKind::kBlackman
                                : WindowKind::kRect;
  c.stft.center = Get<std::uint32_t>(bytes, pos) != 0;
  const auto dc = Get<std::uint32_t>(bytes, pos);
  if (dc > 1) throw FormatError("unknown DC policy code");
  c.dc_policy = dc == 0 ? DcPolicy::kZero : DcPolicy::kCopyBin1;
  c.sample_rate = Get<double>(bytes, pos);
  c.radius = Get<double>(bytes, pos);
  c.v_sound = Get<double>(bytes, pos);
  c.num_frames = Get<std::uint64_t>(bytes, pos);
  c.num_bins = Get<std::uint64_t>(bytes, pos);
  c.num_samples = Get<std::uint64_t>(bytes, pos);
  if (c.order < 0 || c.order > kMaxHarmonicOrder)
    throw FormatError("coefficient order out of range");
  const std::size_t count = c.num_coefficients() * c.num_frames * c.num_bins;
  if (c.num_bins != 0 && c.num_frames != 0 &&
      (bytes.size() - kHeaderBytes) / 8 / c.num_bins / c.num_frames <
          c.num_coefficients())
    throw FormatError("coefficient tensor truncated");
  if (bytes.size() != kHeaderBytes + count * 8)
    throw FormatError("coefficient tensor size does not match header");
  c.beta.resize(count);
  for (auto& v : c.beta) {
    const float re = Get<float>(bytes, pos);
    const float im = Get<float>(bytes, pos);
    v = {re, im};
  }
  try {
    c.stft.Validate();
    c.Validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  return c;
}

std::string CoeffsHeaderJson(const SoundFieldCoeffs& coeffs) {
  nlohmann::ordered_json j;
  j["format"] = "SFC1";
  j["order"] = coeffs.order;
  j["num_coefficients"] = coeffs.num_coefficients();
  j["stft"] = {{"window_size", coeffs.stft.window_size},
               {"hop", coeffs.stft.hop},
               {"window", ToString(coeffs.stft.window)},
               {"center", coeffs.stft.center}};
  j["dc_policy"] = ToString(coeffs.dc_policy);
  j["sample_rate"] = coeffs.sample_rate;
  j["radius_m"] = coeffs.radius;
  j["v_sound"] = coeffs.v_sound;
  j["num_frames"] = coeffs.num_frames;
  j["num_bins"] = coeffs.num_bins;
  j["num_samples"] = coeffs.num_samples;
  j["tensor"] = {{"dtype", "complex64"},
                 {"layout", "harmonic,frame,bin"},
                 {"byte_order", "little"},
                 {"offset", kHeaderBytes}};
  return j.dump(2);
}

void WriteCoeffs(const std::string& path, const SoundFieldCoeffs& coeffs) {
  const auto bytes = SerializeCoeffs(coeffs);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  std::ofstream side(path + ".json", std::ios::trunc);
  if (!side) throw InvalidArgument("cannot write '" + path + ".json'");
  side << CoeffsHeaderJson(coeffs) << "\n";
}

SoundFieldCoeffs ReadCoeffs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return DeserializeCoeffs(bytes);
}

}  // namespace soundfield
