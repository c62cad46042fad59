#pragma once
// Hyperbolic metric on disks (and the upper half-plane), normalized so that the
// unit-disk density is 2/(1-|z|^2), plus the bounds used to estimate the metric
// of an arbitrary simply connected domain.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bakerlab {

using Point = std::complex<double>;

struct PointOutsideDomain : std::domain_error {
  using std::domain_error::domain_error;
};

/// The open disk D(c, r).
struct DiskSpec {
  Point c{0.0, 0.0};
  double r = 1.0;

  DiskSpec() = default;
  DiskSpec(Point center, double radius) : c(center), r(radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("DiskSpec: radius must be positive");
  }

  static DiskSpec unit() { return {}; }
  bool contains(Point z) const { return std::abs(z - c) < r; }
  Point normalize(Point z) const { return (z - c) / r; }
};

inline double disk_density(Point z, const DiskSpec& d) {
  if (!d.contains(z)) throw PointOutsideDomain("disk_density: point not in disk");
  const double u2 = std::norm(d.normalize(z));
  return (2.0 / d.r) / (1.0 - u2);
}

/// Distance in the unit disk between normalized points u, v.
/// rho = log((1+t)/(1-t)) with t = |u-v|/|1-u conj v|, evaluated as
/// 2 log(1+t) - log(1-t^2) using 1-t^2 = (1-|u|^2)(1-|v|^2)/|1-u conj v|^2.
inline double unit_disk_distance(Point u, Point v) {
  const double au = std::abs(u);
  const double av = std::abs(v);
  if (!(au < 1.0) || !(av < 1.0)) throw PointOutsideDomain("unit_disk_distance: point not in unit disk");
  const double denom = std::abs(1.0 - u * std::conj(v));
  const double t = std::abs(u - v) / denom;
  const double one_minus_t2 = ((1.0 - au) * (1.0 + au)) * ((1.0 - av) * (1.0 + av)) / (denom * denom);
  return 2.0 * std::log1p(t) - std::log(one_minus_t2);
}

inline double disk_distance(Point a, Point b, const DiskSpec& d) {
  if (!d.contains(a) || !d.contains(b)) throw PointOutsideDomain("disk_distance: point not in disk");
  return unit_disk_distance(d.normalize(a), d.normalize(b));
}

/// Upper half-plane {Im z > 0}: density 1/Im z, distance 2 artanh |a-b|/|a-conj b|.
inline double half_plane_density(Point z) {
  if (!(z.imag() > 0.0)) throw PointOutsideDomain("half_plane_density: Im z must be positive");
  return 1.0 / z.imag();
}

struct DensityBounds {
  double low = 0.0;
  double high = 0.0;
};

/// For simply connected U: 1/(2 dist) <= lambda_U <= 2/dist.
inline DensityBounds koebe_density_bounds(double dist_to_boundary) {
  if (!(dist_to_boundary > 0.0)) throw std::invalid_argument("koebe_density_bounds: distance must be positive");
  return {0.5 / dist_to_boundary, 2.0 / dist_to_boundary};
}

struct OmittedPointBound {
  Point a, b, c;
  double bound = 0.0;
};

/// Lower bound ½|ln|b-c| - ln|a-c|| for rho_U(a, b), valid for every simply
/// connected U containing a and b but not c.
inline OmittedPointBound omitted_point_bound(Point a, Point b, Point c) {
  if (a == c || b == c) throw std::invalid_argument("omitted_point_bound: a and b must differ from c");
  return {a, b, c, 0.5 * std::fabs(std::log(std::abs(b - c)) - std::log(std::abs(a - c)))};
}

// Built-in holomorphic self-maps of the unit disk.
struct SquareMap {};
struct DiskAutomorphism {
  Point w;  // z -> (z + w)/(1 + conj(w) z), |w| < 1
};
struct ScaleMap {
  Point lambda;  // z -> lambda z, |lambda| <= 1
};
using DiskSelfMap = std::variant<SquareMap, DiskAutomorphism, ScaleMap>;

inline Point apply(const DiskSelfMap& m, Point z) {
  return std::visit(
      [z](const auto& f) -> Point {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareMap>) return z * z;
        else if constexpr (std::is_same_v<T, DiskAutomorphism>) return (z + f.w) / (1.0 + std::conj(f.w) * z);
        else return f.lambda * z;
      },
      m);
}

inline std::string describe(const DiskSelfMap& m) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareMap>) return "square";
        else if constexpr (std::is_same_v<T, DiskAutomorphism>)
          return "mobius:" + std::to_string(f.w.real()) + "," + std::to_string(f.w.imag());
        else return "scale:" + std::to_string(f.lambda.real()) + "," + std::to_string(f.lambda.imag());
      },
      m);
}

/// Parses "square", "mobius:RE,IM" or "scale:RE,IM".
inline DiskSelfMap parse_disk_map(std::string_view id) {
  auto parse_point = [&](std::string_view rest) {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("disk map: expected RE,IM in '" + std::string(id) + "'");
    return Point{std::stod(std::string(rest.substr(0, comma))), std::stod(std::string(rest.substr(comma + 1)))};
  };
  if (id == "square") return SquareMap{};
  if (id.starts_with("mobius:")) {
    const Point w = parse_point(id.substr(7));
    if (!(std::abs(w) < 1.0)) throw std::invalid_argument("disk map: mobius needs |w| < 1");
    return DiskAutomorphism{w};
  }
  if (id.starts_with("scale:")) {
    const Point l = parse_point(id.substr(6));
    if (!(std::abs(l) <= 1.0)) throw std::invalid_argument("disk map: scale needs |lambda| <= 1");
    return ScaleMap{l};
  }
  throw std::invalid_argument("unknown disk map '" + std::string(id) + "'");
}

/// The catalog exercised by the contraction checks.
inline std::vector<DiskSelfMap> builtin_disk_maps() {
  return {SquareMap{},
          DiskAutomorphism{{0.5, 0.0}},
          DiskAutomorphism{{-0.3, 0.6}},
          DiskAutomorphism{{0.0, -0.95}},
          ScaleMap{{0.5, 0.5}},
          ScaleMap{{0.0, 1.0}},
          ScaleMap{{-0.9, 0.0}}};
}

struct SchwarzCheck {
  double lhs = 0.0;  // rho(map a, map b)
  double rhs = 0.0;  // rho(a, b)
  bool ok = false;
};

inline SchwarzCheck schwarz_check(const DiskSelfMap& m, Point a, Point b, double tol = 1e-12) {
  SchwarzCheck s;
  s.rhs = unit_disk_distance(a, b);
  s.lhs = unit_disk_distance(apply(m, a), apply(m, b));
  s.ok = s.lhs <= s.rhs + tol;
  return s;
}

inline SchwarzCheck schwarz_check(std::string_view map_id, Point a, Point b, double tol = 1e-12) {
  return schwarz_check(parse_disk_map(map_id), a, b, tol);
}

}  // namespace bakerlab
