#pragma once
// Randomized property checks for the hyperbolic metric. Every check draws from
// a caller-seeded mt19937_64 so runs are reproducible.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bakerlab/hyperbolic.hpp"
#include "bakerlab/logc.hpp"

namespace bakerlab {

struct PropertyCount {
  std::string check;
  std::size_t samples = 0;
  std::size_t passed = 0;
  double worst = 0.0;  // largest lhs - rhs seen (<= 0 means every sample held)

  bool pass() const { return passed == samples; }
};

namespace detail {

inline Point random_in_disk(std::mt19937_64& rng, Point c, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rad = r * std::sqrt(u(rng));
  return c + std::polar(rad, kTwoPi * u(rng));
}

inline DiskSpec random_disk(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Point c{u(rng) * 20 - 10, u(rng) * 20 - 10};
  return {c, 0.01 + 5 * u(rng)};
}

inline void tally(PropertyCount& pc, double lhs, double rhs) {
  ++pc.samples;
  pc.passed += lhs <= rhs;
  pc.worst = pc.samples == 1 ? lhs - rhs : std::max(pc.worst, lhs - rhs);
}

}  // namespace detail

/// rho_D(a, b) <= 2 log 3 for a, b in the concentric half-radius disk.
inline PropertyCount check_half_disk(std::mt19937_64& rng, std::size_t samples) {
  PropertyCount pc{"half-disk"};
  for (std::size_t i = 0; i < samples; ++i) {
    const DiskSpec d = detail::random_disk(rng);
    const Point a = detail::random_in_disk(rng, d.c, d.r / 2), b = detail::random_in_disk(rng, d.c, d.r / 2);
    detail::tally(pc, disk_distance(a, b, d), 2.0 * std::log(3.0));
  }
  return pc;
}

/// omitted_point_bound(a, b, c) <= rho_D(a, b) with c on the boundary circle.
inline PropertyCount check_omitted_point(std::mt19937_64& rng, std::size_t samples) {
  PropertyCount pc{"omitted-point"};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const DiskSpec d = detail::random_disk(rng);
    const Point c = d.c + std::polar(d.r, kTwoPi * u(rng));
    const Point a = detail::random_in_disk(rng, d.c, d.r), b = detail::random_in_disk(rng, d.c, d.r);
    const double rho = disk_distance(a, b, d);
    detail::tally(pc, omitted_point_bound(a, b, c).bound, rho + 1e-12 * (1.0 + rho));
  }
  return pc;
}

/// Distances shrink when the domain grows: rho_outer <= rho_inner.
inline PropertyCount check_monotone(std::mt19937_64& rng, std::size_t samples) {
  PropertyCount pc{"monotone"};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const DiskSpec outer = detail::random_disk(rng);
    const double r2 = outer.r * (0.05 + 0.9 * u(rng));
    const DiskSpec inner(detail::random_in_disk(rng, outer.c, outer.r - r2), r2);
    const Point a = detail::random_in_disk(rng, inner.c, 0.999 * r2), b = detail::random_in_disk(rng, inner.c, 0.999 * r2);
    const double rho_in = disk_distance(a, b, inner);
    detail::tally(pc, disk_distance(a, b, outer), rho_in + 1e-12 * (1.0 + rho_in));
  }
  return pc;
}

/// Every built-in self-map of the unit disk is a contraction; samples per map.
inline PropertyCount check_schwarz(std::mt19937_64& rng, std::size_t samples_per_map) {
  PropertyCount pc{"schwarz"};
  for (const DiskSelfMap& m : builtin_disk_maps())
    for (std::size_t i = 0; i < samples_per_map; ++i) {
      const Point a = detail::random_in_disk(rng, {0.0, 0.0}, 0.999), b = detail::random_in_disk(rng, {0.0, 0.0}, 0.999);
      const SchwarzCheck s = schwarz_check(m, a, b);
      detail::tally(pc, s.lhs, s.rhs + 1e-12 * (1.0 + s.rhs));
    }
  return pc;
}

/// The disk density at z lies between the Koebe bounds for its boundary distance.
inline PropertyCount check_koebe(std::mt19937_64& rng, std::size_t samples) {
  PropertyCount pc{"koebe"};
  for (std::size_t i = 0; i < samples; ++i) {
    const DiskSpec d = detail::random_disk(rng);
    const Point z = detail::random_in_disk(rng, d.c, d.r);
    const double dist = d.r - std::abs(z - d.c);
    if (!(dist > 0.0)) {
      --i;
      continue;
    }
    const DensityBounds b = koebe_density_bounds(dist);
    const double lam = disk_density(z, d);
    detail::tally(pc, std::max(b.low - lam, lam - b.high), 1e-12 * lam);
  }
  return pc;
}

}  // namespace bakerlab
