#pragma once
// Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands of a
// real variable.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace bakerlab {

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<std::complex<double>, double> gk15(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(mid);
  std::complex<double> kron = fc * kKronrodWeights[7];
  std::complex<double> gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const std::complex<double> sum = f(mid - dx) + f(mid + dx);
    kron += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {kron * half, std::abs((kron - gauss) * half)};
}

template <class F>
void adapt(F& f, double a, double b, double tol, int depth, int max_depth, QuadratureResult& out) {
  auto [value, err] = gk15(f, a, b);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw NonConvergence("quadrature: non-finite integrand value");
  if (err <= tol || (b - a) <= 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(a + b)) {
    out.value += value;
    out.error_estimate += err;
    ++out.intervals;
    return;
  }
  if (depth >= max_depth)
    throw NonConvergence("quadrature: subdivision depth " + std::to_string(max_depth) + " exceeded");
  const double mid = 0.5 * (a + b);
  adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace detail

/// Integrates f over [a, b] until the Kronrod–Gauss difference is below tol
/// on every panel (panel tolerances halve on bisection).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 40) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tol must be positive");
  QuadratureResult out{{0.0, 0.0}, 0.0, 0};
  detail::adapt(f, a, b, tol, 0, max_depth, out);
  return out;
}

}  // namespace bakerlab
