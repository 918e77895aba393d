// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <span>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "soundfield/audio.hpp"
#include "soundfield/baseline.hpp"
#include "soundfield/codec.hpp"
#include "soundfield/config.hpp"
#include "soundfield/error.hpp"
#include "soundfield/geometry.hpp"
#include "soundfield/losses.hpp"
#include "soundfield/metrics.hpp"
#include "soundfield/parallel.hpp"
#include "soundfield/sim.hpp"
#include "soundfield/timewarp.hpp"

namespace soundfield::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::vector<double> ParseTriple(const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string part = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    double d = 0.0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    while (first < last && *first == ' ') ++first;
    if (first < last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, d);
    if (ec != std::errc() || ptr != last || !std::isfinite(d))
      throw InvalidArgument("cannot parse '" + text + "' as three numbers");
    v.push_back(d);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != 3)
    throw InvalidArgument("expected three comma-separated numbers, got '" +
                          text + "'");
  return v;
}

namespace {

Vec3 ParseVec3(const std::string& text) {
  const auto v = ParseTriple(text);
  return {v[0], v[1], v[2]};
}

WavSampleFormat ParseFormat(const std::string& name) {
  if (name == "float32") return WavSampleFormat::kFloat32;
  if (name == "int16") return WavSampleFormat::kInt16;
  if (name == "int24") return WavSampleFormat::kInt24;
  throw InvalidArgument("unknown sample format '" + name + "'");
}

void Flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      Flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    return;
  }
  if (j.is_array()) {
    bool nested = false;
    for (const auto& e : j) nested |= e.is_structured();
    if (nested) {
      for (std::size_t i = 0; i < j.size(); ++i)
        Flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
      return;
    }
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

void Emit(const Json& j, bool pretty, std::ostream& out) {
  if (!pretty) {
    out << j.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  Flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows)
    out << std::left << std::setw(static_cast<int>(width + 2)) << k << v << "\n";
}

struct StftOptions {
  std::size_t window = 1024;
  std::size_t hop = 256;
  std::string kind = "hann";

  void Add(CLI::App* app) {
    app->add_option("--window", window, "STFT window length")->capture_default_str();
    app->add_option("--hop", hop, "STFT hop")->capture_default_str();
    app->add_option("--window-kind", kind, "hann, blackman or rect")->capture_default_str();
  }
  StftConfig Config() const {
    StftConfig cfg{window, hop, ParseWindowKind(kind), true};
    cfg.Validate();
    return cfg;
  }
};

Json StftJson(const StftConfig& cfg) {
  return {{"window_size", cfg.window_size},
          {"hop", cfg.hop},
          {"window", ToString(cfg.window)},
          {"center", cfg.center}};
}

AudioBuffer ReadMono(const std::string& path) {
  AudioBuffer b = ReadWav(path);
  if (b.num_channels() != 1)
    throw InvalidArgument("'" + path + "' must be mono");
  return b;
}

void RequireSameRate(const AudioBuffer& a, const AudioBuffer& b) {
  if (a.sample_rate != b.sample_rate)
    throw InvalidArgument("sample rates differ");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scene, array, receiver, out, format = "float32";
};

Json Simulate(const SimulateArgs& a) {
  if (a.array.empty() == a.receiver.empty())
    throw InvalidArgument("simulate needs exactly one of --array or --receiver");
  const SimScene scene = LoadScene(a.scene);
  const auto fmt = ParseFormat(a.format);
  fs::create_directories(a.out);
  Json files = Json::array();
  AudioBuffer buf;
  if (!a.array.empty()) {
    const auto geom = LoadMicArray(a.array);
    buf = SimulateArray(scene, geom);
    for (std::size_t i = 0; i < geom.size(); ++i) {
      const auto path = (fs::path(a.out) / (geom.mics[i].id + ".wav")).string();
      WriteWav(path, buf.Channel(i), fmt);
      files.push_back(path);
    }
  } else {
    buf = SimulateReceiver(scene, ParseVec3(a.receiver));
    const auto path = (fs::path(a.out) / "receiver.wav").string();
    WriteWav(path, buf, fmt);
    files.push_back(path);
  }
  return {{"command", "simulate"},
          {"sample_rate", buf.sample_rate},
          {"num_samples", buf.num_samples()},
          {"files", files}};
}

// ------------------------------------------------------------------ encode

struct EncodeArgs {
  std::string mics, array, out, dc = "zero", solve = "tikhonov";
  int order = -1;
  double tikhonov = 1e-6;
  double v_sound = kDefaultSpeedOfSound;
  StftOptions stft;
};

AudioBuffer ReadMicDirectory(const std::string& dir, const MicArrayGeometry& geom) {
  AudioBuffer buf;
  for (const auto& mic : geom.mics) {
    const auto path = (fs::path(dir) / (mic.id + ".wav")).string();
    AudioBuffer ch = ReadMono(path);
    if (buf.channels.empty()) {
      buf.sample_rate = ch.sample_rate;
    } else if (ch.num_samples() != buf.num_samples()) {
      throw InvalidArgument("'" + path + "' has " + std::to_string(ch.num_samples()) +
                            " samples, expected " + std::to_string(buf.num_samples()));
    } else if (ch.sample_rate != buf.sample_rate) {
      throw InvalidArgument("'" + path + "' has a different sample rate");
    }
    buf.channels.push_back(std::move(ch.channels[0]));
  }
  return buf;
}

Json EncodeCmd(const EncodeArgs& a) {
  const auto geom = LoadMicArray(a.array);
  const AudioBuffer mics = ReadMicDirectory(a.mics, geom);
  EncoderConfig cfg;
  cfg.order = a.order;
  cfg.tikhonov_rel = a.tikhonov;
  cfg.dc_policy = ParseDcPolicy(a.dc);
  if (a.solve == "tikhonov") {
    cfg.solve = SolveMode::kTikhonov;
  } else if (a.solve == "svd") {
    cfg.solve = SolveMode::kExactSvd;
  } else {
    throw InvalidArgument("unknown solve mode '" + a.solve + "'");
  }
  const auto coeffs = Encode(Stft(mics, a.stft.Config()), geom, cfg, a.v_sound);
  WriteCoeffs(a.out, coeffs);
  Json j{{"command", "encode"}, {"file", a.out}};
  j["header"] = Json::parse(CoeffsHeaderJson(coeffs));
  return j;
}

// ------------------------------------------------------------------ render

struct RenderArgs {
  std::string coeffs, at, coords = "sph", out, format = "float32";
};

SphericalPos RenderPosition(const std::string& at, const std::string& coords) {
  const auto v = ParseTriple(at);
  if (coords == "sph") {
    if (v[2] == 0.0) throw DomainError("cannot render at r = 0");
    return MakeSpherical(v[0], v[1], v[2]);
  }
  if (coords == "cart") {
    const Vec3 p{v[0], v[1], v[2]};
    if (p.Norm() == 0.0) throw DomainError("cannot render at r = 0");
    return CartToSph(p);
  }
  throw InvalidArgument("--coords must be 'sph' or 'cart'");
}

Json RenderCmd(const RenderArgs& a) {
  const auto pos = RenderPosition(a.at, a.coords);
  const auto fmt = ParseFormat(a.format);
  const auto coeffs = ReadCoeffs(a.coeffs);
  const auto audio = Render(coeffs, pos);
  WriteWav(a.out, audio, fmt);
  return {{"command", "render"},
          {"file", a.out},
          {"position", {{"azimuth_rad", pos.azimuth},
                        {"polar_rad", pos.polar},
                        {"radius_m", pos.radius}}},
          {"num_samples", audio.num_samples()}};
}

// -------------------------------------------------------------------- warp

struct WarpArgs {
  std::string input, pose, target, out, input_joint = "nose",
                                        format = "float32";
  std::vector<std::string> joints;
  double v_sound = 343.0;
  bool stack = false;
};

Json WarpCmd(const WarpArgs& a) {
  const AudioBuffer in = ReadWav(a.input);
  const PoseTrack pose = LoadPoseTrack(a.pose);
  const Vec3 target = ParseVec3(a.target);
  const auto fmt = ParseFormat(a.format);
  Json j{{"command", "warp"}, {"file", a.out}};
  if (a.stack) {
    const auto joints = a.joints.empty() ? DefaultWarpJoints() : a.joints;
    const auto out = WarpStack(in, pose, joints, target, a.v_sound, a.input_joint);
    WriteWav(a.out, out, fmt);
    j["channels"] = out.num_channels();
    j["joints"] = joints;
    return j;
  }
  if (a.joints.size() != 1)
    throw InvalidArgument("warp needs exactly one --joint (or --stack)");
  RequirePoseCovers(pose, in.num_samples(), in.sample_rate);
  const auto wf = ComputeWarpfield(
      pose, {a.joints[0], a.input_joint, target, a.v_sound, in.sample_rate,
             in.num_samples()});
  const auto out = ApplyWarp(in, wf);
  WriteWav(a.out, out, fmt);
  j["channels"] = out.num_channels();
  j["rho_first"] = wf.rho.front();
  j["rho_last"] = wf.rho.back();
  return j;
}

// ---------------------------------------------------------------- baseline

struct BaselineArgs {
  std::string input, pose, target, array, out, head = "nose",
                                               format = "float32";
  double v_sound = 343.0;
  double reference_distance = 1.0;
};

Json BaselineCmd(const BaselineArgs& a) {
  if (a.array.empty() == a.target.empty())
    throw InvalidArgument("baseline needs exactly one of --target or --array");
  const AudioBuffer in = ReadWav(a.input);
  const PoseTrack pose = LoadPoseTrack(a.pose);
  const auto fmt = ParseFormat(a.format);
  BaselineConfig cfg{a.v_sound, a.reference_distance, a.head};
  Json files = Json::array();
  if (!a.target.empty()) {
    WriteWav(a.out, NaiveSpatialize(in, pose, ParseVec3(a.target), cfg), fmt);
    files.push_back(a.out);
  } else {
    const auto geom = LoadMicArray(a.array);
    const auto out = NaiveSpatializeArray(in, pose, geom, cfg);
    fs::create_directories(a.out);
    for (std::size_t i = 0; i < geom.size(); ++i) {
      const auto path = (fs::path(a.out) / (geom.mics[i].id + ".wav")).string();
      WriteWav(path, out.Channel(i), fmt);
      files.push_back(path);
    }
  }
  return {{"command", "baseline"}, {"files", files}};
}

// -------------------------------------------------------------- loss, eval

struct LossArgs {
  std::string est, ref, sigma_scope = "segment";
  ShiftL2Config shift;
  MsStftConfig ms;
};

Json LossCmd(LossArgs a) {
  const AudioBuffer est = ReadWav(a.est), ref = ReadWav(a.ref);
  RequireSameRate(est, ref);
  if (a.sigma_scope == "segment") {
    a.shift.sigma_scope = SigmaScope::kSegment;
  } else if (a.sigma_scope == "clip") {
    a.shift.sigma_scope = SigmaScope::kClip;
  } else {
    throw InvalidArgument("--sigma-scope must be 'segment' or 'clip'");
  }
  const auto rep = CombinedLoss(est, ref, a.shift, a.ms);
  return {{"command", "loss"},
          {"shift_l2", rep.shift_l2},
          {"ms_stft", rep.ms_stft},
          {"weight", a.ms.weight},
          {"combined", rep.combined}};
}

struct EvalArgs {
  std::string est, ref;
  StftOptions stft;
};

Json EvalCmd(const EvalArgs& a) {
  const AudioBuffer est = ReadWav(a.est), ref = ReadWav(a.ref);
  RequireSameRate(est, ref);
  const auto cfg = a.stft.Config();
  return {{"command", "eval"},
          {"sdr_db", Sdr(est, ref)},
          {"amplitude_x1000", AmplitudeError(est, ref, cfg)},
          {"phase_rad", PhaseError(est, ref, cfg)},
          {"stft", StftJson(cfg)}};
}

// -------------------------------------------------------------------- demo

struct DemoArgs {
  std::string out;
  std::uint64_t seed = 7;
  double duration = 0.5;
  std::size_t mics = 64;
  double radius = 1.7;
  int order = 6;
  double offset = 0.1;
  double f_lo = 300.0, f_hi = 1500.0;
  StftOptions stft;
};

double RelativeL2(std::span<const double> est, std::span<const double> ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += (est[i] - ref[i]) * (est[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

// Quasi-uniform positions interleaved with, but distinct from, a Fibonacci
// array.
std::vector<SphericalPos> HeldOutPositions(double radius) {
  std::vector<SphericalPos> out;
  for (int k = 0; k < 8; ++k) {
    const double polar = std::acos(1.0 - (2.0 * k + 1.0) / 8.0);
    const double az = std::fmod(0.7 + 2.39996 * k, 2.0 * std::numbers::pi);
    out.push_back(MakeSpherical(az, polar, radius));
  }
  return out;
}

Json DemoCmd(const DemoArgs& a) {
  if (!(a.duration > 0.0)) throw InvalidArgument("--duration must be positive");
  const fs::path dir(a.out);
  fs::create_directories(dir / "mics");
  fs::create_directories(dir / "render");
  fs::create_directories(dir / "truth");
  const double rate = kDefaultSampleRate;
  const auto n = static_cast<std::size_t>(std::lround(a.duration * rate));

  WriteWav((dir / "source.wav").string(),
           BandLimitedNoise(n, rate, a.f_lo, a.f_hi, a.seed));
  const auto geom = FibonacciSphere(a.mics, a.radius);
  WriteJsonFile((dir / "array.json").string(), MicArrayToJson(geom));
  WriteJsonFile((dir / "scene.json").string(),
                {{"v_sound", kDefaultSpeedOfSound},
                 {"interpolation", "sinc"},
                 {"sources", {{{"wav", "source.wav"},
                               {"position", {a.offset, 0.0, 0.0}}}}}});
  // Reload through the scene file so the WAV quantization is part of the run.
  const SimScene scene = LoadScene((dir / "scene.json").string());

  const AudioBuffer mics = SimulateArray(scene, geom);
  for (std::size_t i = 0; i < geom.size(); ++i)
    WriteWav((dir / "mics" / (geom.mics[i].id + ".wav")).string(), mics.Channel(i));

  const auto stft = a.stft.Config();
  EncoderConfig enc;
  enc.order = a.order;
  const auto coeffs = Encode(Stft(mics, stft), geom, enc);
  WriteCoeffs((dir / "field.sfc").string(), coeffs);

  std::vector<double> mic_err(geom.size());
  ParallelFor(geom.size(), [&](std::size_t i) {
    mic_err[i] = RelativeL2(Render(coeffs, geom.mics[i].pos).channel(0),
                            mics.channel(i));
  });
  double mean = 0.0, worst = 0.0;
  for (double e : mic_err) {
    mean += e;
    worst = std::max(worst, e);
  }
  mean /= static_cast<double>(mic_err.size());

  Json held = Json::array();
  double worst_held = 0.0, min_sdr = kSdrCapDb;
  const auto positions = HeldOutPositions(a.radius);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const auto& pos = positions[k];
    const AudioBuffer est = Render(coeffs, pos);
    const AudioBuffer truth = SimulateReceiver(scene, SphToCart(pos));
    char name[32];
    std::snprintf(name, sizeof name, "h%02zu.wav", k);
    WriteWav((dir / "render" / name).string(), est);
    WriteWav((dir / "truth" / name).string(), truth);
    const double rel = RelativeL2(est.channel(0), truth.channel(0));
    const double sdr = Sdr(est, truth);
    worst_held = std::max(worst_held, rel);
    min_sdr = std::min(min_sdr, sdr);
    held.push_back({{"file", std::string("render/") + name},
                    {"azimuth_rad", pos.azimuth},
                    {"polar_rad", pos.polar},
                    {"radius_m", pos.radius},
                    {"rel_l2", rel},
                    {"sdr_db", sdr},
                    {"amplitude_x1000", AmplitudeError(est, truth, stft)},
                    {"phase_rad", PhaseError(est, truth, stft)}});
  }

  Json metrics{
      {"config", {{"seed", a.seed},
                  {"duration_s", a.duration},
                  {"num_mics", a.mics},
                  {"radius_m", a.radius},
                  {"order", coeffs.order},
                  {"source_offset_m", a.offset},
                  {"band_hz", {a.f_lo, a.f_hi}},
                  {"stft", StftJson(stft)}}},
      {"mics", {{"mean_rel_l2", mean}, {"max_rel_l2", worst}}},
      {"held_out", held},
      {"summary", {{"max_held_out_rel_l2", worst_held},
                   {"min_held_out_sdr_db", min_sdr}}}};
  std::ofstream((dir / "metrics.json").string()) << metrics.dump(2) << "\n";
  Json j{{"command", "demo"}, {"out", a.out}};
  j["mics"] = metrics["mics"];
  j["summary"] = metrics["summary"];
  return j;
}

unsigned ThreadsFromEnv(unsigned fallback) {
  const char* env = std::getenv("SOUNDFIELD_THREADS");
  if (env == nullptr || *env == '\0') return fallback;
  unsigned v = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("SOUNDFIELD_THREADS must be a non-negative integer");
  return v;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Sound field toolkit: simulate, encode, render, warp and score audio"};
  app.name("soundfield");
  app.require_subcommand(1);
  bool pretty = false;
  unsigned threads = 0;
  app.add_flag("--pretty", pretty, "print a flat table instead of JSON");
  app.add_option("--threads", threads,
                 "worker threads (0 = all cores; SOUNDFIELD_THREADS overrides)");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "free-field simulation to WAV files");
  c_sim->add_option("--scene", sim.scene, "scene JSON")->required();
  c_sim->add_option("--array", sim.array, "mic array JSON (one WAV per mic)");
  c_sim->add_option("--receiver", sim.receiver, "single receiver x,y,z");
  c_sim->add_option("--out", sim.out, "output directory")->required();
  c_sim->add_option("--format", sim.format, "float32, int16 or int24");

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "mic WAVs to harmonic coefficients");
  c_enc->add_option("--mics", enc.mics, "directory of <mic id>.wav")->required();
  c_enc->add_option("--array", enc.array, "mic array JSON")->required();
  c_enc->add_option("--order", enc.order, "harmonic order (default: largest supported)");
  c_enc->add_option("--out", enc.out, "coefficient file")->required();
  c_enc->add_option("--dc", enc.dc, "zero or copy_bin1")->capture_default_str();
  c_enc->add_option("--solve", enc.solve, "tikhonov or svd")->capture_default_str();
  c_enc->add_option("--tikhonov", enc.tikhonov, "relative regularization")->capture_default_str();
  c_enc->add_option("--v-sound", enc.v_sound, "speed of sound (m/s)")->capture_default_str();
  enc.stft.Add(c_enc);

  RenderArgs ren;
  auto* c_ren = app.add_subcommand("render", "decode coefficients at a point");
  c_ren->add_option("--coeffs", ren.coeffs, "coefficient file")->required();
  c_ren->add_option("--at", ren.at, "azimuth,polar,radius or x,y,z")->required();
  c_ren->add_option("--coords", ren.coords, "sph or cart")->capture_default_str();
  c_ren->add_option("--out", ren.out, "output WAV")->required();
  c_ren->add_option("--format", ren.format, "float32, int16 or int24");

  WarpArgs warp;
  auto* c_warp = app.add_subcommand("warp", "geometric time warp of a head-mic recording");
  c_warp->add_option("--input", warp.input, "input WAV")->required();
  c_warp->add_option("--pose", warp.pose, "pose track JSON")->required();
  c_warp->add_option("--target", warp.target, "target x,y,z")->required();
  c_warp->add_option("--joint", warp.joints, "source joint (repeatable with --stack)");
  c_warp->add_option("--input-joint", warp.input_joint, "joint carrying the input mic")
      ->capture_default_str();
  c_warp->add_option("--v-sound", warp.v_sound, "speed of sound (m/s)")->capture_default_str();
  c_warp->add_flag("--stack", warp.stack, "originals followed by one warp per joint");
  c_warp->add_option("--out", warp.out, "output WAV")->required();
  c_warp->add_option("--format", warp.format, "float32, int16 or int24");

  BaselineArgs base;
  auto* c_base = app.add_subcommand("baseline", "time warp plus distance attenuation from the head");
  c_base->add_option("--input", base.input, "mono head-mic WAV")->required();
  c_base->add_option("--pose", base.pose, "pose track JSON")->required();
  c_base->add_option("--target", base.target, "target x,y,z (writes one WAV)");
  c_base->add_option("--array", base.array, "mic array JSON (writes a directory)");
  c_base->add_option("--out", base.out, "output WAV or directory")->required();
  c_base->add_option("--head-joint", base.head, "head joint")->capture_default_str();
  c_base->add_option("--v-sound", base.v_sound, "speed of sound (m/s)")->capture_default_str();
  c_base->add_option("--reference-distance", base.reference_distance, "unit-gain distance (m)")
      ->capture_default_str();
  c_base->add_option("--format", base.format, "float32, int16 or int24");

  LossArgs loss;
  auto* c_loss = app.add_subcommand("loss", "shift-l2 and multiscale STFT loss");
  c_loss->add_option("--est", loss.est, "estimate WAV")->required();
  c_loss->add_option("--ref", loss.ref, "reference WAV")->required();
  c_loss->add_option("--segment", loss.shift.segment, "segment length L")->capture_default_str();
  c_loss->add_option("--alpha", loss.shift.alpha, "offset penalty scale")->capture_default_str();
  c_loss->add_option("--delta", loss.shift.delta, "denominator floor")->capture_default_str();
  c_loss->add_option("--sigma-scope", loss.sigma_scope, "segment or clip")->capture_default_str();
  c_loss->add_option("--weight", loss.ms.weight, "multiscale STFT weight")->capture_default_str();
  c_loss->add_option("--windows", loss.ms.windows, "multiscale STFT window sizes");

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "SDR, amplitude and phase error");
  c_eval->add_option("--est", ev.est, "estimate WAV")->required();
  c_eval->add_option("--ref", ev.ref, "reference WAV")->required();
  ev.stft.Add(c_eval);

  DemoArgs demo;
  auto* c_demo = app.add_subcommand("demo", "simulate, encode, render and evaluate in one go");
  c_demo->add_option("--out", demo.out, "output directory")->required();
  c_demo->add_option("--seed", demo.seed, "noise seed")->capture_default_str();
  c_demo->add_option("--duration", demo.duration, "seconds")->capture_default_str();
  c_demo->add_option("--mics", demo.mics, "microphones on the sphere")->capture_default_str();
  c_demo->add_option("--radius", demo.radius, "sphere radius (m)")->capture_default_str();
  c_demo->add_option("--order", demo.order, "harmonic order")->capture_default_str();
  c_demo->add_option("--offset", demo.offset, "source distance from the center (m)")
      ->capture_default_str();
  demo.stft.Add(c_demo);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    SetMaxThreads(ThreadsFromEnv(threads));
    Json result;
    if (c_sim->parsed()) result = Simulate(sim);
    else if (c_enc->parsed()) result = EncodeCmd(enc);
    else if (c_ren->parsed()) result = RenderCmd(ren);
    else if (c_warp->parsed()) result = WarpCmd(warp);
    else if (c_base->parsed()) result = BaselineCmd(base);
    else if (c_loss->parsed()) result = LossCmd(loss);
    else if (c_eval->parsed()) result = EvalCmd(ev);
    else if (c_demo->parsed()) result = DemoCmd(demo);
    Emit(result, pretty, out);
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kFormat;
  } catch (const UnsupportedFormat& e) {
    err << "error: " << e.what() << "\n";
    return kFormat;
  } catch (const OrderTooHigh& e) {
    err << "error: " << e.what() << "\n";
    return kOrderTooHigh;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const DegenerateInput& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const DegenerateReference& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace soundfield::cli
