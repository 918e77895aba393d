// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "soundfield/audio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "soundfield/error.hpp"

namespace soundfield {

AudioBuffer AudioBuffer::Mono(std::vector<double> samples, double rate) {
  AudioBuffer buf;
  buf.sample_rate = rate;
  buf.channels.push_back(std::move(samples));
  return buf;
}

void AudioBuffer::Validate() const {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw InvalidArgument("sample rate must be positive");
  for (const auto& ch : channels) {
    if (ch.size() != num_samples())
      throw InvalidArgument("audio channels have different lengths");
    for (double v : ch)
      if (!std::isfinite(v)) throw InvalidArgument("non-finite audio sample");
  }
}

AudioBuffer AudioBuffer::Channel(std::size_t c) const {
  if (c >= channels.size())
    throw InvalidArgument("channel index out of range");
  return Mono(channels[c], sample_rate);
}

void RequireSameShape(const AudioBuffer& a, const AudioBuffer& b,
                      const char* what) {
  if (a.num_channels() != b.num_channels() ||
      a.num_samples() != b.num_samples())
    throw InvalidArgument(std::string(what) + ": shape mismatch (" +
                          std::to_string(a.num_channels()) + "x" +
                          std::to_string(a.num_samples()) + " vs " +
                          std::to_string(b.num_channels()) + "x" +
                          std::to_string(b.num_samples()) + ")");
}

// ---------------------------------------------------------------------------
// RIFF/WAVE

namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class Reader {
 public:
  explicit Reader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  template <typename T>
  T Read() {
    if (pos_ + sizeof(T) > bytes_.size())
      throw FormatError("unexpected end of WAV data");
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string Tag() {
    if (pos_ + 4 > bytes_.size()) throw FormatError("unexpected end of WAV data");
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return s;
  }
  void Skip(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw FormatError("chunk exceeds file size");
    pos_ += n;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  const unsigned char* data() const { return bytes_.data() + pos_; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

template <typename T>
void Put(std::vector<unsigned char>& out, T v) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

void PutTag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioBuffer DecodeWav(std::span<const unsigned char> bytes) {
  Reader r(bytes);
  if (bytes.size() < 12 || r.Tag() != "RIFF")
    throw FormatError("missing RIFF header");
  r.Read<std::uint32_t>();
  if (r.Tag() != "WAVE") throw FormatError("missing WAVE tag");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  while (r.remaining() >= 8) {
    const std::string id = r.Tag();
    const std::uint32_t size = r.Read<std::uint32_t>();
    if (id == "fmt ") {
      if (size < 16) throw FormatError("fmt chunk too small");
      const std::size_t start = r.pos();
      format = r.Read<std::uint16_t>();
      channels = r.Read<std::uint16_t>();
      rate = r.Read<std::uint32_t>();
      r.Read<std::uint32_t>();  // byte rate
      r.Read<std::uint16_t>();  // block align
      bits = r.Read<std::uint16_t>();
      if (format == kFormatExtensible) {
        if (size < 40) throw FormatError("extensible fmt chunk too small");
        r.Skip(8);  // cbSize, valid bits, channel mask
        format = r.Read<std::uint16_t>();
      }
      r.Skip(size - (r.pos() - start) + (size & 1u));
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError("data chunk before fmt chunk");
      if (size > r.remaining()) throw FormatError("truncated data chunk");
      if (channels == 0 || rate == 0)
        throw FormatError("invalid channel count or sample rate");
      const bool is_float = format == kFormatFloat;
      if (format != kFormatPcm && !is_float)
        throw UnsupportedFormat("WAV codec " + std::to_string(format));
      if (is_float ? (bits != 32 && bits != 64)
                   : (bits != 16 && bits != 24 && bits != 32))
        throw UnsupportedFormat(std::to_string(bits) + "-bit " +
                                (is_float ? "float" : "PCM") + " samples");
      const std::size_t width = bits / 8;
      const std::size_t frames = size / (width * channels);
      AudioBuffer buf(channels, frames, static_cast<double>(rate));
      const unsigned char* p = r.data();
      for (std::size_t i = 0; i < frames; ++i) {
        for (std::size_t c = 0; c < channels; ++c, p += width) {
          double v = 0.0;
          if (is_float && bits == 32) {
            float f;
            std::memcpy(&f, p, 4);
            v = f;
          } else if (is_float) {
            std::memcpy(&v, p, 8);
          } else if (bits == 16) {
            std::int16_t s;
            std::memcpy(&s, p, 2);
            v = s / 32767.0;
          } else if (bits == 24) {
            std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
            if (s & 0x800000) s -= 0x1000000;
            v = s / 8388607.0;
          } else {
            std::int32_t s;
            std::memcpy(&s, p, 4);
            v = s / 2147483647.0;
          }
          buf.channels[c][i] = v;
        }
      }
      return buf;
    } else {
      r.Skip(size + (size & 1u));
    }
  }
  throw FormatError("no data chunk");
}

std::vector<unsigned char> EncodeWav(const AudioBuffer& buf,
                                     WavSampleFormat format) {
  buf.Validate();
  if (buf.num_channels() == 0 || buf.num_channels() > 65535)
    throw InvalidArgument("WAV needs between 1 and 65535 channels");
  const double rate = std::round(buf.sample_rate);
  const std::uint16_t bits = format == WavSampleFormat::kInt16   ? 16
                             : format == WavSampleFormat::kInt24 ? 24
                                                                 : 32;
  const std::uint16_t channels = static_cast<std::uint16_t>(buf.num_channels());
  const std::uint16_t block = channels * (bits / 8);
  const std::uint64_t data_size =
      static_cast<std::uint64_t>(block) * buf.num_samples();
  if (data_size > 0xFFFFFFFFull - 36) throw InvalidArgument("WAV too large");

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(36 + data_size));
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  Put<std::uint32_t>(out, 16);
  Put<std::uint16_t>(out, format == WavSampleFormat::kFloat32 ? kFormatFloat
                                                               : kFormatPcm);
  Put<std::uint16_t>(out, channels);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(rate));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(rate) * block);
  Put<std::uint16_t>(out, block);
  Put<std::uint16_t>(out, bits);
  PutTag(out, "data");
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(data_size));
  for (std::size_t i = 0; i < buf.num_samples(); ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double v = buf.channels[c][i];
      switch (format) {
        case WavSampleFormat::kFloat32:
          Put<float>(out, static_cast<float>(v));
          break;
        case WavSampleFormat::kInt16:
          Put<std::int16_t>(out, static_cast<std::int16_t>(
                                     std::lround(std::clamp(v, -1.0, 1.0) * 32767.0)));
          break;
        case WavSampleFormat::kInt24: {
          const std::int32_t s = static_cast<std::int32_t>(
              std::lround(std::clamp(v, -1.0, 1.0) * 8388607.0));
          out.push_back(static_cast<unsigned char>(s & 0xFF));
          out.push_back(static_cast<unsigned char>((s >> 8) & 0xFF));
          out.push_back(static_cast<unsigned char>((s >> 16) & 0xFF));
          break;
        }
      }
    }
  }
  return out;
}

AudioBuffer ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return DecodeWav(bytes);
}

void WriteWav(const std::string& path, const AudioBuffer& buf,
              WavSampleFormat format) {
  const auto bytes = EncodeWav(buf, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

}  // namespace soundfield
