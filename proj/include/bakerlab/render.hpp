#pragma once
// Escape-time images from classification grids and phase portraits of h,
// written as binary PPM (P6).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bakerlab/dynamics.hpp"
#include "bakerlab/hfun.hpp"
#include "bakerlab/logc.hpp"
#include "bakerlab/parallel.hpp"

namespace bakerlab {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Image {
  std::uint32_t width = 0, height = 0;
  std::vector<Rgb> pixels;  // row-major, top row first

  Image() = default;
  Image(std::uint32_t w, std::uint32_t h) : width(w), height(h), pixels(std::size_t{w} * h) {}
  Rgb& at(std::uint32_t x, std::uint32_t y) { return pixels[std::size_t{y} * width + x]; }
  const Rgb& at(std::uint32_t x, std::uint32_t y) const { return pixels[std::size_t{y} * width + x]; }
  friend bool operator==(const Image&, const Image&) = default;
};

inline std::vector<std::uint8_t> encode_ppm(const Image& img) {
  const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + 3 * img.pixels.size());
  for (const Rgb& p : img.pixels) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

inline void write_ppm(const std::string& path, const Image& img) {
  const auto bytes = encode_ppm(img);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

// Cyclic palettes, indexed by escape step modulo their length.
inline constexpr std::array<Rgb, 16> kRainbowPalette = {{
    {255, 0, 0},   {255, 96, 0},  {255, 191, 0}, {223, 255, 0}, {128, 255, 0}, {32, 255, 0},
    {0, 255, 64},  {0, 255, 159}, {0, 255, 255}, {0, 159, 255}, {0, 64, 255},  {32, 0, 255},
    {128, 0, 255}, {223, 0, 255}, {255, 0, 191}, {255, 0, 96},
}};
inline constexpr std::array<Rgb, 8> kFirePalette = {{
    {32, 0, 0}, {96, 0, 0}, {160, 16, 0}, {224, 64, 0}, {255, 128, 0}, {255, 192, 32}, {255, 240, 128}, {255, 255, 224},
}};
inline constexpr std::array<Rgb, 8> kGrayPalette = {{
    {40, 40, 40}, {70, 70, 70}, {100, 100, 100}, {130, 130, 130}, {160, 160, 160}, {190, 190, 190}, {215, 215, 215}, {240, 240, 240},
}};

inline std::span<const Rgb> palette_by_name(std::string_view name) {
  if (name == "rainbow") return kRainbowPalette;
  if (name == "fire") return kFirePalette;
  if (name == "gray") return kGrayPalette;
  throw std::invalid_argument("unknown palette '" + std::string(name) + "'");
}

inline constexpr Rgb kBoundedColor{0, 0, 0};
inline constexpr Rgb kTranslationColor{255, 255, 255};

inline Rgb escape_color(const GridCell& cell, std::span<const Rgb> palette) {
  switch (cell.status) {
    case OrbitStatus::BoundedSoFar: return kBoundedColor;
    case OrbitStatus::Escaped: return palette[cell.step % palette.size()];
    case OrbitStatus::NearZeroTranslation:
    case OrbitStatus::EscapedAfterTranslation: return kTranslationColor;
  }
  return kBoundedColor;
}

inline Image render_escape(const EscapeGrid& grid, std::string_view palette_name) {
  const auto palette = palette_by_name(palette_name);
  Image img(grid.nx, grid.ny);
  for (std::size_t i = 0; i < grid.cells.size(); ++i) img.pixels[i] = escape_color(grid.cells[i], palette);
  return img;
}

/// Brightness in (0, 1): 0.5 + atan(ln|h| / 40)/π. Exact zeros map to 0.
inline double phase_brightness(const LogValue& v) {
  if (v.is_zero()) return 0.0;
  return 0.5 + std::atan(v.polar().logmod / 40.0) / kPi;
}

/// Hue from arg h (red at arg 0, counter-clockwise), value from phase_brightness.
inline Rgb phase_color(const LogValue& v) {
  if (v.is_zero()) return {0, 0, 0};
  const double value = phase_brightness(v);
  double hue = v.polar().arg / kTwoPi;
  if (hue < 0.0) hue += 1.0;
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(h6) % 6;
  const double frac = h6 - std::floor(h6);
  const double q = value * (1.0 - frac);
  const double t = value * frac;
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = value, g = t, b = 0; break;
    case 1: r = q, g = value, b = 0; break;
    case 2: r = 0, g = value, b = t; break;
    case 3: r = 0, g = q, b = value; break;
    case 4: r = t, g = 0, b = value; break;
    default: r = value, g = 0, b = q; break;
  }
  auto byte = [](double x) { return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); };
  return {byte(r), byte(g), byte(b)};
}

inline Image render_phase(const GridRect& rect, std::uint32_t nx, std::uint32_t ny, const ParamSeq& p,
                          unsigned threads = 1) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("render_phase: nx and ny must be at least 1");
  Image img(nx, ny);
  parallel_for(ny, threads, [&](std::size_t iy) {
    for (std::uint32_t ix = 0; ix < nx; ++ix) {
      const Cartesian z = pixel_center(rect, nx, ny, ix, static_cast<std::uint32_t>(iy));
      img.at(ix, static_cast<std::uint32_t>(iy)) = phase_color(eval_h(z, p).value);
    }
  });
  return img;
}

}  // namespace bakerlab
