#pragma once
// Orbits of f(z) = z + e^{h(z)} and escape classification over a grid.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bakerlab/hfun.hpp"
#include "bakerlab/parallel.hpp"
#include "bakerlab/params.hpp"

namespace bakerlab {

enum class OrbitStatus : std::uint8_t {
  BoundedSoFar = 0,
  Escaped = 1,
  NearZeroTranslation = 2,  // a translation step was seen, orbit did not escape
  EscapedAfterTranslation = 3,
};

inline const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::BoundedSoFar: return "bounded-so-far";
    case OrbitStatus::Escaped: return "escaped";
    case OrbitStatus::NearZeroTranslation: return "near-zero-translation";
    case OrbitStatus::EscapedAfterTranslation: return "escaped-after-translation";
  }
  return "?";
}

struct OrbitRecord {
  std::vector<Cartesian> points;   // z_0, z_1, ... while representable
  std::optional<LogComplex> tail;  // first iterate that only exists in log form
  std::optional<std::size_t> escape_step;
  // First step j at which |h(z_j)| < ln 2, so that f(z_j) - z_j = e^{h(z_j)}
  // has modulus in [1/2, 2] and f acts like a unit translation.
  std::optional<std::size_t> translation_step;
  std::size_t max_steps = 0;

  OrbitStatus status() const {
    if (escape_step) return translation_step ? OrbitStatus::EscapedAfterTranslation : OrbitStatus::Escaped;
    return translation_step ? OrbitStatus::NearZeroTranslation : OrbitStatus::BoundedSoFar;
  }
};

struct OrbitOptions {
  std::size_t max_steps = 100;
  double escape_radius = 0.0;  // 0: 4 r_K
};

inline double default_escape_radius(const ParamSeq& p) { return 4.0 * p.r(p.size()); }

inline OrbitRecord iterate(Cartesian z0, const ParamSeq& p, const OrbitOptions& opt = {}) {
  if (opt.max_steps < 1) throw std::invalid_argument("iterate: max_steps must be at least 1");
  const double radius = opt.escape_radius > 0.0 ? opt.escape_radius : default_escape_radius(p);
  if (!(radius > p.r(p.size()))) throw std::invalid_argument("iterate: escape_radius must exceed r_K");
  OrbitRecord rec;
  rec.max_steps = opt.max_steps;
  rec.points.push_back(z0);
  Cartesian z = z0;
  const double log_ln2 = std::log(std::log(2.0));
  for (std::size_t step = 1; step <= opt.max_steps; ++step) {
    if (std::abs(z) > radius) {
      rec.escape_step = step - 1;
      break;
    }
    const EvalResult h = eval_h(z, p);
    if (!rec.translation_step && h.value.logmod() < log_ln2) rec.translation_step = step - 1;
    const EvalResult f = f_from_h(z, h);
    if (f.regime == Regime::Escaped) {
      rec.tail = f.value.polar();
      rec.escape_step = step;
      break;
    }
    z = *f.cartesian;
    rec.points.push_back(z);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      rec.escape_step = step;
      break;
    }
    if (step == opt.max_steps && std::abs(z) > radius) rec.escape_step = step;
  }
  return rec;
}

struct GridRect {
  Cartesian lo;  // (x0, y0)
  Cartesian hi;  // (x1, y1)

  friend bool operator==(const GridRect&, const GridRect&) = default;
};

struct GridCell {
  OrbitStatus status = OrbitStatus::BoundedSoFar;
  // First escape step when escaped, else first translation step for
  // NearZeroTranslation, else max_steps.
  std::uint32_t step = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct EscapeGrid {
  std::uint32_t nx = 0, ny = 0;
  GridRect rect;
  std::uint32_t max_steps = 0;
  double escape_radius = 0.0;
  std::uint64_t params_hash = 0;
  std::vector<GridCell> cells;  // row-major, row 0 at the top (y = y1)

  const GridCell& at(std::uint32_t ix, std::uint32_t iy) const { return cells.at(std::size_t{iy} * nx + ix); }
  friend bool operator==(const EscapeGrid&, const EscapeGrid&) = default;
};

/// Pixel centre of column ix, row iy. Rows run from y1 (top) to y0. A
/// degenerate axis maps every pixel to that coordinate. The offsets from the
/// centre are odd in the pixel index, so a rect symmetric about the real axis
/// samples exactly conjugate points in mirrored rows.
inline Cartesian pixel_center(const GridRect& rect, std::uint32_t nx, std::uint32_t ny, std::uint32_t ix,
                              std::uint32_t iy) {
  auto coord = [](double a, double b, std::uint32_t count, std::int64_t odd) {
    const double mid = 0.5 * (a + b);
    return mid + (static_cast<double>(odd) * (b - a)) / (2.0 * static_cast<double>(count));
  };
  const double x = coord(rect.lo.real(), rect.hi.real(), nx, 2 * std::int64_t{ix} + 1 - nx);
  const double y = coord(rect.lo.imag(), rect.hi.imag(), ny, std::int64_t{ny} - 1 - 2 * std::int64_t{iy});
  return {x, y};
}

inline GridCell classify_point(Cartesian z, const ParamSeq& p, const OrbitOptions& opt) {
  const OrbitRecord rec = iterate(z, p, opt);
  GridCell cell;
  cell.status = rec.status();
  if (rec.escape_step) cell.step = static_cast<std::uint32_t>(*rec.escape_step);
  else if (rec.translation_step) cell.step = static_cast<std::uint32_t>(*rec.translation_step);
  else cell.step = static_cast<std::uint32_t>(opt.max_steps);
  return cell;
}

inline EscapeGrid classify_grid(const GridRect& rect, std::uint32_t nx, std::uint32_t ny, const ParamSeq& p,
                                const OrbitOptions& opt = {}, unsigned threads = 1) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("classify_grid: nx and ny must be at least 1");
  EscapeGrid g;
  g.nx = nx;
  g.ny = ny;
  g.rect = rect;
  g.max_steps = static_cast<std::uint32_t>(opt.max_steps);
  g.escape_radius = opt.escape_radius > 0.0 ? opt.escape_radius : default_escape_radius(p);
  g.params_hash = params_hash(p);
  g.cells.resize(std::size_t{nx} * ny);
  OrbitOptions row_opt = opt;
  row_opt.escape_radius = g.escape_radius;
  parallel_for(ny, threads, [&](std::size_t iy) {
    for (std::uint32_t ix = 0; ix < nx; ++ix)
      g.cells[iy * nx + ix] =
          classify_point(pixel_center(rect, nx, ny, ix, static_cast<std::uint32_t>(iy)), p, row_opt);
  });
  return g;
}

}  // namespace bakerlab
