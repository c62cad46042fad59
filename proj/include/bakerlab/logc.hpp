#pragma once
// Log-polar complex arithmetic. A nonzero value is stored as (ln|v|, arg v) so
// that quantities such as e^{h(z)} with Re h ~ 1e16 stay representable.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>

namespace bakerlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kE = std::numbers::e;

namespace detail {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

inline DoubleDouble dd_neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

// 2π as a triple-double.
inline constexpr double kTwoPiHi = 6.283185307179586232e+00;
inline constexpr double kTwoPiMid = 2.449293598294706414e-16;
inline constexpr double kTwoPiLo = -5.989539619436679332e-33;

// Beyond this the quotient q = round(x / 2π) times the triple-double 2π
// loses more than ~1e-12 of absolute accuracy.
inline constexpr double kReductionLimit = 0x1p62;

inline double wrap_to_pi(double a) {
  if (a > kPi) a -= kTwoPi;
  if (a <= -kPi) a += kTwoPi;
  return a;
}

// Reduces the exact double-double x modulo 2π into (−π, π].
inline double reduce_two_pi(DoubleDouble x) {
  if (!std::isfinite(x.hi)) return std::numeric_limits<double>::quiet_NaN();
  if (std::fabs(x.hi) <= kPi && x.lo == 0.0) return x.hi == -kPi ? kPi : x.hi;
  if (std::fabs(x.hi) >= kReductionLimit) {
    // Angular information is already below double resolution here.
    return wrap_to_pi(std::remainder(x.hi, kTwoPi));
  }
  const double q = std::nearbyint(x.hi / kTwoPiHi);
  DoubleDouble r = dd_add(x, dd_neg(two_prod(q, kTwoPiHi)));
  r = dd_add(r, dd_neg(two_prod(q, kTwoPiMid)));
  r = dd_add(r, {-q * kTwoPiLo, 0.0});
  return wrap_to_pi(r.hi + r.lo);
}

}  // namespace detail

/// Normalizes any finite angle into (−π, π].
inline double normalize_arg(double a) { return detail::reduce_two_pi({a, 0.0}); }

/// A nonzero complex number in log-polar form.
struct LogComplex {
  double logmod = 0.0;  // ln |v|
  double arg = 0.0;     // radians in (−π, π]

  friend bool operator==(const LogComplex&, const LogComplex&) = default;
};

/// Either an exact zero or a LogComplex. Exact zeros matter: the zeros of h
/// drive f(a) = a + 1 with no rounding.
class LogValue {
 public:
  constexpr LogValue() = default;  // Zero
  constexpr LogValue(LogComplex v) : v_(v) {}

  static constexpr LogValue zero() { return {}; }
  static constexpr LogValue one() { return LogComplex{0.0, 0.0}; }

  constexpr bool is_zero() const { return !v_.has_value(); }
  constexpr const LogComplex& polar() const {
    if (!v_) throw std::logic_error("LogValue: polar() of exact zero");
    return *v_;
  }
  constexpr double logmod() const {
    return v_ ? v_->logmod : -std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const LogValue&, const LogValue&) = default;

 private:
  std::optional<LogComplex> v_;
};

/// Classification returned when a value is too large for a double.
struct OverflowSignal {
  LogComplex value;
};

using Cartesian = std::complex<double>;
using CartesianOrOverflow = std::variant<Cartesian, OverflowSignal>;

/// ln(DBL_MAX); values with a larger log-modulus cannot be converted.
inline const double kCartesianLogLimit = std::log(std::numeric_limits<double>::max());

inline LogValue from_cartesian(double x, double y) {
  if (x == 0.0 && y == 0.0) return LogValue::zero();
  const double ax = std::fabs(x);
  const double ay = std::fabs(y);
  const double big = std::max(ax, ay);
  double logmod;
  if (big >= 0.5 && big <= 2.0) {
    // |v|² − 1 formed with fma keeps ln|v| accurate near the unit circle.
    const double small = std::min(ax, ay);
    const double t = std::fma(big - 1.0, big + 1.0, small * small);
    logmod = 0.5 * std::log1p(t);
  } else {
    logmod = std::log(std::hypot(x, y));
  }
  return LogComplex{logmod, std::atan2(y, x)};
}

inline LogValue from_cartesian(Cartesian z) { return from_cartesian(z.real(), z.imag()); }

/// Unit vector e^{i arg}; exact on the axes so that e.g. (0, π/2) maps to i.
inline Cartesian unit_phasor(double arg) {
  if (arg == 0.0) return {1.0, 0.0};
  if (arg == kPi) return {-1.0, 0.0};
  if (arg == kPi / 2) return {0.0, 1.0};
  if (arg == -kPi / 2) return {0.0, -1.0};
  return {std::cos(arg), std::sin(arg)};
}

inline CartesianOrOverflow to_cartesian(const LogValue& v) {
  if (v.is_zero()) return Cartesian{0.0, 0.0};
  const LogComplex& p = v.polar();
  if (!(p.logmod <= kCartesianLogLimit)) return OverflowSignal{p};
  return std::exp(p.logmod) * unit_phasor(p.arg);
}

/// Cartesian value or nullopt on overflow.
inline std::optional<Cartesian> try_cartesian(const LogValue& v) {
  auto c = to_cartesian(v);
  if (auto* z = std::get_if<Cartesian>(&c)) return *z;
  return std::nullopt;
}

inline LogValue mul(const LogValue& a, const LogValue& b) {
  if (a.is_zero() || b.is_zero()) return LogValue::zero();
  const LogComplex& x = a.polar();
  const LogComplex& y = b.polar();
  return LogComplex{x.logmod + y.logmod, detail::wrap_to_pi(x.arg + y.arg)};
}

inline LogValue reciprocal(const LogComplex& v) {
  return LogComplex{-v.logmod, v.arg == kPi ? kPi : -v.arg};
}

/// Thresholds for the three evaluation regimes of add_one.
struct AddOneRegimes {
  double small_logmod = -50.0;  // at or below: log1p expansion around 1
  double large_logmod = 50.0;   // at or above: expansion around v
};

namespace detail {

// 1 + w for |w| < 1: ln|1+w| = ½ log1p(2 Re w + |w|²).
inline LogComplex add_one_small(const LogComplex& w) {
  const double mag = std::exp(w.logmod);
  const Cartesian u = unit_phasor(w.arg);
  const double x = mag * u.real();
  const double y = mag * u.imag();
  const double logmod = 0.5 * std::log1p(std::fma(x, x, std::fma(y, y, 2.0 * x)));
  return {logmod, std::atan2(y, 1.0 + x)};
}

}  // namespace detail

inline LogValue add_one(const LogValue& v, const AddOneRegimes& regimes = {}) {
  if (v.is_zero()) return LogValue::one();
  const LogComplex& w = v.polar();
  if (w.logmod == 0.0 && w.arg == kPi) return LogValue::zero();
  if (w.logmod <= regimes.small_logmod) return detail::add_one_small(w);
  if (w.logmod >= regimes.large_logmod) {
    // 1 + v = v (1 + 1/v)
    const LogValue inv = reciprocal(w);
    return mul(v, LogValue(detail::add_one_small(inv.polar())));
  }
  // |w| < 1: the log1p form keeps ln|1+w| accurate when it is small.
  if (w.logmod < 0.0) return detail::add_one_small(w);
  const Cartesian s = std::exp(w.logmod) * unit_phasor(w.arg) + 1.0;
  return from_cartesian(s);
}

/// v^n for n >= 0. The angle n·arg is reduced modulo 2π in double-double so
/// it stays accurate for n of order 1e9 and beyond.
inline LogValue pow_int(const LogValue& v, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("pow_int: negative exponent");
  if (n == 0) return LogValue::one();
  if (v.is_zero()) return LogValue::zero();
  const LogComplex& p = v.polar();
  // Split n so each half is exact in a double.
  const double n_hi = static_cast<double>((n >> 32) << 32);
  const double n_lo = static_cast<double>(n & 0xffffffffLL);
  const detail::DoubleDouble angle =
      detail::dd_add(detail::two_prod(p.arg, n_hi), detail::two_prod(p.arg, n_lo));
  const double logmod = p.logmod * n_hi + p.logmod * n_lo;
  return LogComplex{logmod, detail::reduce_two_pi(angle)};
}

/// e^{h} in log-polar form.
inline LogComplex exp_of(Cartesian h) { return {h.real(), normalize_arg(h.imag())}; }

inline LogValue conj(const LogValue& v) {
  if (v.is_zero()) return v;
  const LogComplex& p = v.polar();
  return LogComplex{p.logmod, p.arg == kPi ? kPi : -p.arg};
}

}  // namespace bakerlab
