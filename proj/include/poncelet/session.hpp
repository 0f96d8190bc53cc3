#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poncelet/error.hpp"
#include "poncelet/family.hpp"
#include "poncelet/locus.hpp"
#include "poncelet/svg.hpp"

namespace poncelet {

inline constexpr std::uint8_t kSchemaVersion = 1;
inline constexpr int kMaxSamples = 100000;

/// Everything needed to reproduce one view: family, tracked point, sampling
/// and style.
struct ExperimentState {
  std::uint8_t schema_version = kSchemaVersion;
  FamilyKind family = FamilyKind::confocal;
  double a = 1.5;
  double b = 1.0;
  std::optional<double> free;
  Target target = Target::center(1);
  DerivedKind derived = DerivedKind::reference;
  int samples = kDefaultSamples;
  StyleMode style = StyleMode::wireframe;
  std::uint64_t palette_seed = 1;
  double animation_speed = 1.0;

  friend bool operator==(const ExperimentState&, const ExperimentState&) = default;

  FamilySpec family_spec() const { return make_family(family, a, b, free); }

  LocusRequest locus_request() const { return {family_spec(), target, derived, samples}; }

  Style style_spec() const { return Style::make(style, palette_seed); }
};

/// Throws OutOfRange unless the state describes a valid request and style.
inline void validate(const ExperimentState& s) {
  auto reject = [](const std::string& why) { fail(ErrorCode::OutOfRange, why); };
  if (s.schema_version != kSchemaVersion) reject("schema_version must be 1");
  if (!(s.a > 0.0) || !(s.b > 0.0) || !std::isfinite(s.a) || !std::isfinite(s.b)) {
    reject("semi-axes must be finite and positive");
  }
  if (s.samples < kMinSamples || s.samples > kMaxSamples) reject("samples out of range");
  if (!std::isfinite(s.animation_speed) || s.animation_speed < 0.0) reject("animation speed out of range");
  if (s.target.kind == Target::Kind::vertex) {
    if (s.target.index < 1 || s.target.index > 3) reject("vertex must be 1, 2 or 3");
  } else if (!CenterRegistry::builtin().contains(s.target.index)) {
    reject("unknown center");
  }
  try {
    (void)s.family_spec();
  } catch (const Error& e) {
    reject(e.what());
  }
}

namespace codec_detail {

inline constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
inline constexpr std::size_t kBodySize = 52;

inline std::string base64url_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    for (int shift : {18, 12, 6, 0}) out += kAlphabet[(v >> shift) & 63];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t v = bytes[i] << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
  } else if (rest == 2) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    for (int shift : {18, 12, 6}) out += kAlphabet[(v >> shift) & 63];
  }
  return out;
}

/// Strict decoder: no padding, no stray characters, zero trailing bits.
inline std::optional<std::vector<std::uint8_t>> base64url_decode(std::string_view text) {
  if (text.size() % 4 == 1) return std::nullopt;
  std::vector<std::uint8_t> out;
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    const auto pos = kAlphabet.find(c);
    if (pos == std::string_view::npos) return std::nullopt;
    acc = (acc << 6) | static_cast<std::uint32_t>(pos);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
    }
  }
  if (bits > 0 && (acc & ((1u << bits) - 1)) != 0) return std::nullopt;
  return out;
}

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  void le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }
  double f64() { return std::bit_cast<double>(le(8)); }

 private:
  std::uint64_t le(int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

template <class Enum, std::size_t N>
Enum enum_from_byte(std::uint8_t v, const std::array<Enum, N>& all) {
  if (v >= N) fail(ErrorCode::CorruptBlob, "enumeration byte out of range");
  return all[v];
}

template <class Enum, std::size_t N>
std::uint8_t enum_to_byte(Enum e, const std::array<Enum, N>& all) {
  for (std::size_t i = 0; i < N; ++i) {
    if (all[i] == e) return static_cast<std::uint8_t>(i);
  }
  return 0;
}

}  // namespace codec_detail

/// URL-safe share string: base64url (no padding) of a 52-byte little-endian
/// record led by the schema version byte.
inline std::string encode(const ExperimentState& s) {
  using namespace codec_detail;
  Writer w;
  w.u8(s.schema_version);
  w.u8(enum_to_byte(s.family, kAllFamilyKinds));
  w.f64(s.a);
  w.f64(s.b);
  w.u8(s.free ? 1 : 0);
  w.f64(s.free ? *s.free + 0.0 : 0.0);
  w.u8(s.target.kind == Target::Kind::center ? 0 : 1);
  w.u16(static_cast<std::uint16_t>(s.target.index));
  w.u8(enum_to_byte(s.derived, kAllDerivedKinds));
  w.u32(static_cast<std::uint32_t>(s.samples));
  w.u8(enum_to_byte(s.style, kAllStyleModes));
  w.u64(s.palette_seed);
  w.f64(s.animation_speed + 0.0);
  return base64url_encode(w.take());
}

inline ExperimentState decode(std::string_view blob) {
  using namespace codec_detail;
  const auto bytes = base64url_decode(blob);
  if (!bytes || bytes->empty()) fail(ErrorCode::CorruptBlob, "state blob is not valid base64url");
  if ((*bytes)[0] != kSchemaVersion) {
    fail(ErrorCode::UnsupportedVersion, "unsupported state schema version " + std::to_string((*bytes)[0]));
  }
  if (bytes->size() != kBodySize) fail(ErrorCode::CorruptBlob, "state blob has the wrong length");

  Reader r(*bytes);
  ExperimentState s;
  s.schema_version = r.u8();
  s.family = enum_from_byte(r.u8(), kAllFamilyKinds);
  s.a = r.f64();
  s.b = r.f64();
  const std::uint8_t has_free = r.u8();
  const double free = r.f64();
  if (has_free > 1) fail(ErrorCode::CorruptBlob, "bad optional flag");
  if (has_free == 1) {
    s.free = free;
  } else if (std::bit_cast<std::uint64_t>(free) != 0) {
    fail(ErrorCode::CorruptBlob, "absent free parameter must be zero-filled");
  }
  const std::uint8_t target_kind = r.u8();
  if (target_kind > 1) fail(ErrorCode::CorruptBlob, "bad target kind");
  const int index = r.u16();
  s.target = target_kind == 0 ? Target::center(index) : Target::vertex(index);
  s.derived = enum_from_byte(r.u8(), kAllDerivedKinds);
  const std::uint32_t samples = r.u32();
  if (samples > static_cast<std::uint32_t>(kMaxSamples)) fail(ErrorCode::OutOfRange, "samples out of range");
  s.samples = static_cast<int>(samples);
  s.style = enum_from_byte(r.u8(), kAllStyleModes);
  s.palette_seed = r.u64();
  s.animation_speed = r.f64();
  validate(s);
  return s;
}

}  // namespace poncelet
