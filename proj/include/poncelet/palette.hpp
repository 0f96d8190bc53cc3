#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "poncelet/error.hpp"

namespace poncelet {

/// HSL color; hue in degrees, saturation and lightness in percent.
struct Color {
  double hue = 0.0;
  double saturation = 0.0;
  double lightness = 0.0;

  /// "#rrggbb"
  std::string hex() const {
    const double s = saturation / 100.0;
    const double l = lightness / 100.0;
    const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
    const double hp = std::fmod(hue, 360.0) / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = l - c / 2.0;
    auto byte = [&](double v) { return static_cast<int>(std::lround(std::clamp((v + m) * 255.0, 0.0, 255.0))); };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(r), byte(g), byte(b));
    return buf;
  }
};

inline constexpr double kPastelSaturationMin = 35.0;
inline constexpr double kPastelSaturationMax = 55.0;
inline constexpr double kPastelLightnessMin = 70.0;
inline constexpr double kPastelLightnessMax = 85.0;

/// Seeded pastel colors. Draws come straight from mt19937_64, whose output
/// sequence is fixed by the standard, so palettes match across platforms.
inline std::vector<Color> pastel_palette(std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "palette needs at least one color");
  std::mt19937_64 gen(seed);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<Color> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = 360.0 * unit();
    const double s = kPastelSaturationMin + (kPastelSaturationMax - kPastelSaturationMin) * unit();
    const double l = kPastelLightnessMin + (kPastelLightnessMax - kPastelLightnessMin) * unit();
    out.push_back({h, s, l});
  }
  return out;
}

}  // namespace poncelet
