#pragma once
// Evaluation of h(z) = prod_k (1 + (z/r_k)^{n_k}), f(z) = z + e^{h(z)}, the
// zeros and probe points on the circles |z| = r_k, |z| = s_k, the angle
// function theta, and the Newton companion g(z) = exp(-int_0^z e^{-h(t)} dt).

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bakerlab/logc.hpp"
#include "bakerlab/params.hpp"
#include "bakerlab/quadrature.hpp"

namespace bakerlab {

enum class Regime {
  Representable,  // value fits in a double
  Escaped,        // value only exists in log-polar form
};

inline const char* to_string(Regime r) { return r == Regime::Representable ? "exact-ish" : "escaped"; }

struct EvalOptions {
  std::size_t factors = 0;  // 0: use every stored factor
  // A factor 1 + w is an exact zero when w is within this many units of
  // roundoff (scaled by n_k) of -1 in log-polar coordinates. That is the
  // forward error of w = (z/r_k)^{n_k} computed from a double z.
  double zero_snap_ulps = 16.0;
  AddOneRegimes regimes;
  double escape_logmod = 700.0;  // Re h above this makes e^h Escaped
};

struct EvalResult {
  LogValue value;
  std::optional<Cartesian> cartesian;
  // Relative error bound for the omitted tail of the product; +inf when the
  // geometric tail argument does not apply.
  double trunc_bound = 0.0;
  Regime regime = Regime::Representable;
  // eval_f only: ln|z| - Re h, the log-size of z relative to e^h when Escaped.
  std::optional<double> perturbation_log;

  bool unbounded_tail() const { return std::isinf(trunc_bound); }
};

namespace detail {

inline bool snaps_to_minus_one(const LogComplex& w, std::int64_t n, double ulps) {
  const double tol = ulps * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  return std::fabs(w.logmod) <= tol && (kPi - std::fabs(w.arg)) <= tol;
}

inline std::size_t factor_count(const ParamSeq& p, const EvalOptions& opt) {
  if (opt.factors == 0) return p.size();
  if (opt.factors > p.size()) throw std::out_of_range("EvalOptions::factors exceeds stored factors");
  return opt.factors;
}

}  // namespace detail

/// Truncation bound after J factors: if r_J >= 2|z|, every omitted factor obeys
/// |z/r_k|^{n_k} <= 2^{-k}, so the tail changes h by a relative amount at most
/// exp(2^{1-J}) - 1.
inline double truncation_bound(Cartesian z, const ParamSeq& p, std::size_t factors) {
  if (p.r(factors) >= 2.0 * std::abs(z)) return std::expm1(std::ldexp(1.0, 1 - static_cast<int>(factors)));
  return std::numeric_limits<double>::infinity();
}

inline EvalResult eval_h(Cartesian z, const ParamSeq& p, const EvalOptions& opt = {}) {
  const std::size_t J = detail::factor_count(p, opt);
  EvalResult res;
  res.trunc_bound = truncation_bound(z, p, J);
  LogValue acc = LogValue::one();
  for (std::size_t k = 1; k <= J; ++k) {
    const LogValue w = pow_int(from_cartesian(z / p.r(k)), p.n(k));
    if (!w.is_zero() && detail::snaps_to_minus_one(w.polar(), p.n(k), opt.zero_snap_ulps)) {
      acc = LogValue::zero();
      break;
    }
    acc = mul(acc, add_one(w, opt.regimes));
  }
  res.value = acc;
  res.cartesian = try_cartesian(acc);
  res.regime = res.cartesian ? Regime::Representable : Regime::Escaped;
  return res;
}

/// f(z) = z + e^{h(z)}. trunc_bound is the relative error bound of the e^h
/// term implied by the bound on h: expm1(trunc_bound(h) * |h|).
inline EvalResult f_from_h(Cartesian z, const EvalResult& h, const EvalOptions& opt = {}) {
  EvalResult res;
  if (h.value.is_zero()) {
    // e^0 = 1 exactly; the additive 1 is the only change.
    const Cartesian f{z.real() + 1.0, z.imag()};
    res.value = from_cartesian(f);
    res.cartesian = f;
    res.trunc_bound = 0.0;
    return res;
  }
  const double h_abs = std::exp(h.value.logmod());
  res.trunc_bound = std::isinf(h.trunc_bound) ? h.trunc_bound : std::expm1(h.trunc_bound * h_abs);
  if (!h.cartesian) {
    // |h| beyond double range: e^h is either astronomically large or zero.
    const double re_sign = std::cos(h.value.polar().arg);
    if (re_sign > 0.0) {
      res.value = LogComplex{std::numeric_limits<double>::infinity(), 0.0};
      res.regime = Regime::Escaped;
      res.perturbation_log = -std::numeric_limits<double>::infinity();
    } else {
      res.value = from_cartesian(z);
      res.cartesian = z;
    }
    return res;
  }
  const Cartesian hc = *h.cartesian;
  if (hc.real() > opt.escape_logmod) {
    res.value = exp_of(hc);
    res.regime = Regime::Escaped;
    res.perturbation_log = std::log(std::abs(z)) - hc.real();
    return res;
  }
  const Cartesian f = z + std::exp(hc.real()) * unit_phasor(normalize_arg(hc.imag()));
  res.value = from_cartesian(f);
  res.cartesian = f;
  return res;
}

inline EvalResult eval_f(Cartesian z, const ParamSeq& p, const EvalOptions& opt = {}) {
  return f_from_h(z, eval_h(z, p, opt), opt);
}

/// The unique theta in [0, 1) with e^{2πiφ}(1 + e·e^{2πiθ}) > 0.
///
/// The circle t -> 1 + e·e^{2πit} winds once around 0, so the target
/// direction ψ = -2πφ meets it in exactly one point ρe^{iψ} with
/// ρ = cos ψ + sqrt(cos²ψ + e² - 1), solving |ρe^{iψ} - 1| = e.
inline double theta(double phi) {
  const double frac = phi - std::floor(phi);
  const double c = std::cos(kTwoPi * frac);
  const double s = -std::sin(kTwoPi * frac);
  const double rho = c + std::sqrt(c * c + kE * kE - 1.0);
  const double wx = rho * c - 1.0;
  const double wy = rho * s;
  double t = std::atan2(wy, wx) / kTwoPi;
  if (t < 0.0) t += 1.0;
  if (t >= 1.0) t = 0.0;
  return t + 0.0;
}

/// e^{2πiφ}(1 + e·e^{2πiθ}).
inline Cartesian rotated_probe_factor(double phi, double th) {
  return std::polar(1.0, kTwoPi * phi) * (1.0 + kE * std::polar(1.0, kTwoPi * th));
}

struct ProbePoint {
  std::size_t k = 0;
  std::int64_t nu = 0;
  double phi = 0.0;    // ν m_k / n_k reduced mod 1
  double theta = 0.0;  // θ(φ)
  Cartesian a;         // zero r_k e^{(2ν+1)πi/n_k}
  Cartesian b;         // probe s_k e^{2πi(ν+θ)/n_k}
  double p = 0.0;      // e^{2πiφ}(1 + e·e^{2πiθ}), real and >= e - 1
  double logT = 0.0;
};

inline ProbePoint probe_point(std::size_t k, std::int64_t nu, const ParamSeq& params, const DerivedParams& d) {
  if (k < 2 || k > params.size()) throw std::out_of_range("probe_point: need 2 <= k <= K");
  const std::int64_t nk = params.n(k);
  if (nu < 0 || nu >= nk) throw std::out_of_range("probe_point: need 0 <= nu < n_k");
  ProbePoint pp;
  pp.k = k;
  pp.nu = nu;
  const auto num = static_cast<__int128>(nu) * static_cast<__int128>(d.m_at(k) % nk) % nk;
  pp.phi = static_cast<double>(num) / static_cast<double>(nk);
  pp.theta = theta(pp.phi);
  const Cartesian pv = rotated_probe_factor(pp.phi, pp.theta);
  if (!(std::fabs(pv.imag()) <= 1e-10 * std::abs(pv)) || !(pv.real() > 0.0))
    throw std::logic_error("probe_point: p_nu is not positive real");
  pp.p = pv.real();
  const double dn = static_cast<double>(nk);
  const double a_turns = (2.0 * static_cast<double>(nu) + 1.0) / (2.0 * dn);
  pp.a = std::polar(params.r(k), kTwoPi * a_turns);
  pp.b = std::polar(d.s_at(k), kTwoPi * ((static_cast<double>(nu) + pp.theta) / dn));
  pp.logT = d.logT_at(k);
  return pp;
}

inline ProbePoint probe_point(std::size_t k, std::int64_t nu, const ParamSeq& params) {
  return probe_point(k, nu, params, derive(params));
}

/// e^{-h(t)}; throws NonConvergence when it leaves double range.
inline Cartesian exp_neg_h(Cartesian t, const ParamSeq& p, const EvalOptions& opt = {}) {
  const EvalResult h = eval_h(t, p, opt);
  if (h.value.is_zero()) return {1.0, 0.0};
  if (!h.cartesian || -h.cartesian->real() > kCartesianLogLimit)
    throw NonConvergence("e^{-h} overflows on the integration path");
  return std::exp(-*h.cartesian);
}

/// int_from^to e^{-h(t)} dt along the straight segment.
inline QuadratureResult integrate_exp_neg_h(Cartesian from, Cartesian to, const ParamSeq& p, double tol) {
  const Cartesian dz = to - from;
  if (dz == Cartesian{0.0, 0.0}) return {};
  // t = from + s dz, s in [0, 1]; dt = dz ds.
  return integrate_adaptive([&](double s) { return exp_neg_h(from + s * dz, p) * dz; }, 0.0, 1.0, tol);
}

/// g along the polyline 0 = path[0], path[1], ..., path.back() = z.
inline Cartesian eval_g_path(std::span<const Cartesian> path, const ParamSeq& p, double tol) {
  if (path.empty() || path.front() != Cartesian{0.0, 0.0})
    throw std::invalid_argument("eval_g_path: path must start at 0");
  if (!(tol > 0.0)) throw std::invalid_argument("eval_g_path: tol must be positive");
  const double leg_tol = tol / static_cast<double>(std::max<std::size_t>(1, path.size() - 1));
  Cartesian integral{0.0, 0.0};
  for (std::size_t i = 1; i < path.size(); ++i)
    integral += integrate_exp_neg_h(path[i - 1], path[i], p, leg_tol).value;
  return std::exp(-integral);
}

/// g(z) = exp(-int_0^z e^{-h(t)} dt) along the segment [0, z].
inline Cartesian eval_g(Cartesian z, const ParamSeq& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("eval_g: tol must be positive");
  if (z == Cartesian{0.0, 0.0}) return {1.0, 0.0};
  const Cartesian path[] = {{0.0, 0.0}, z};
  return eval_g_path(path, p, tol);
}

struct NewtonCheck {
  Cartesian f;          // z + e^{h(z)}
  Cartesian newton;     // z - g(z)/g'(z), g' by central differences
  Cartesian g;
  Cartesian g_prime;
  double residual = 0.0;
};

inline NewtonCheck newton_check(Cartesian z, const ParamSeq& p, double step, double tol = 1e-10) {
  if (!(step > 0.0)) throw std::invalid_argument("newton_residual: step must be positive");
  const EvalResult fz = eval_f(z, p);
  if (!fz.cartesian) throw std::domain_error("newton_residual: f(z) escaped double range");
  NewtonCheck out;
  out.f = *fz.cartesian;
  out.g = eval_g(z, p, tol);
  out.g_prime = (eval_g(z + step, p, tol) - eval_g(z - step, p, tol)) / (2.0 * step);
  if (!(std::abs(out.g_prime) > 1e-12 * std::abs(out.g)))
    throw std::domain_error("newton_residual: |g'| is numerically zero");
  out.newton = z - out.g / out.g_prime;
  out.residual = std::abs(out.f - out.newton);
  return out;
}

inline double newton_residual(Cartesian z, const ParamSeq& p, double step, double tol = 1e-10) {
  return newton_check(z, p, step, tol).residual;
}

}  // namespace bakerlab
