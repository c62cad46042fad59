#pragma once
// Numerical checks of the growth estimates for h on the circles |z| = r_k and
// |z| = s_k, and a replay of the inequality chain that rules out invariant
// Baker domains, evaluated at one index k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bakerlab/hfun.hpp"
#include "bakerlab/hyperbolic.hpp"
#include "bakerlab/logc.hpp"
#include "bakerlab/parallel.hpp"
#include "bakerlab/params.hpp"

namespace bakerlab {

struct SampleOptions {
  unsigned threads = 1;
  std::size_t batch = 256;
};

namespace detail {

inline void require_index(const ParamSeq& p, std::size_t k, const char* who) {
  if (k < 2 || k > p.size())
    throw std::domain_error(std::string(who) + ": k must satisfy 2 <= k <= K (m_k is undefined for k = 1)");
}

// e^{2πi j q / N} with the exponent reduced exactly in integers.
inline Cartesian turn_phasor(std::int64_t q, std::int64_t j, std::int64_t N) {
  const auto rem = static_cast<__int128>(q % N) * j % N;
  return std::polar(1.0, kTwoPi * (static_cast<double>(rem) / static_cast<double>(N)));
}

// Runs body(i) for i in [0, count) in batches; each batch folds into its own slot.
template <class T, class Body, class Fold>
std::vector<T> batched(std::size_t count, const SampleOptions& opt, T init, Body&& body, Fold&& fold) {
  const std::size_t batch = std::max<std::size_t>(1, opt.batch);
  const std::size_t batches = (count + batch - 1) / batch;
  std::vector<T> out(batches, init);
  parallel_for(batches, opt.threads, [&](std::size_t b) {
    T acc = init;
    const std::size_t end = std::min(count, (b + 1) * batch);
    for (std::size_t i = b * batch; i < end; ++i) acc = fold(acc, body(i));
    out[b] = acc;
  });
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// |h(z)| <= 4 r_k^{m_k} on |z| = r_k

struct GrowthReport {
  std::size_t k = 0;
  std::size_t samples = 0;
  double max_log_abs_h = 0.0;
  double argmax_t = 0.0;  // angle in [0, 2π) where the maximum was seen
  double bound_log = 0.0;  // ln 4 + m_k ln r_k
  double margin = 0.0;     // bound_log - max_log_abs_h
  bool preconditions_met = false;  // r_j >= 2 r_{j-1} >= 4 and n_j >= j for j <= k
  bool pass = false;
};

inline GrowthReport verify_growth_on_rk(const ParamSeq& p, std::size_t k, std::size_t samples,
                                        const SampleOptions& opt = {}) {
  detail::require_index(p, k, "verify_growth");
  if (samples == 0) throw std::invalid_argument("verify_growth: samples must be positive");
  const DerivedParams d = derive(p);
  GrowthReport rep;
  rep.k = k;
  rep.samples = samples;
  rep.bound_log = std::log(4.0) + static_cast<double>(d.m_at(k)) * std::log(p.r(k));
  rep.preconditions_met = p.r(1) >= 2.0;
  for (std::size_t j = 2; j <= k; ++j) rep.preconditions_met = rep.preconditions_met && p.r(j) >= 2.0 * p.r(j - 1);

  struct Best {
    double logmod;
    std::size_t index;
  };
  const double rk = p.r(k);
  const auto N = static_cast<std::int64_t>(samples);
  auto parts = detail::batched<Best>(
      samples, opt, Best{-std::numeric_limits<double>::infinity(), 0},
      [&](std::size_t i) {
        const Cartesian z = rk * detail::turn_phasor(1, static_cast<std::int64_t>(i), N);
        return Best{eval_h(z, p).value.logmod(), i};
      },
      [](Best a, Best b) { return b.logmod > a.logmod ? b : a; });
  Best best = parts.front();
  for (const Best& b : parts)
    if (b.logmod > best.logmod) best = b;
  rep.max_log_abs_h = best.logmod;
  rep.argmax_t = kTwoPi * static_cast<double>(best.index) / static_cast<double>(samples);
  rep.margin = rep.bound_log - rep.max_log_abs_h;
  rep.pass = rep.max_log_abs_h <= rep.bound_log;
  return rep;
}

// ---------------------------------------------------------------------------
// h(s_k e^{it}) ~ T_k e^{i m_k t} (1 + e e^{i n_k t})

struct AsymptoticReport {
  std::size_t k = 0;
  std::size_t samples = 0;
  // max_t |h(s_k e^{it}) - T_k e^{i m_k t}(1 + e e^{i n_k t})| / (T_k (e - 1))
  double max_rel_err = 0.0;
  double argmax_t = 0.0;
  // First-order size of the neglected terms: sum_{j<k} (r_j/s_k)^{n_j}
  // + |(1+1/n_k)^{n_k} / e - 1| + (s_k/r_{k+1})^{n_{k+1}}. Shrinks as the
  // degrees outgrow the lower indices.
  double predicted_scale = 0.0;
};

inline double asymptotic_correction_scale(const ParamSeq& p, const DerivedParams& d, std::size_t k) {
  const double s = d.s_at(k);
  double scale = 0.0;
  for (std::size_t j = 1; j < k; ++j) scale += std::exp(static_cast<double>(p.n(j)) * std::log(p.r(j) / s));
  const double nk = static_cast<double>(p.n(k));
  scale += std::fabs(std::expm1(nk * std::log1p(1.0 / nk) - 1.0));
  if (k < p.size()) scale += std::exp(static_cast<double>(p.n(k + 1)) * std::log(s / p.r(k + 1)));
  return scale;
}

inline AsymptoticReport verify_asymptotic_on_sk(const ParamSeq& p, std::size_t k, std::size_t samples,
                                                const SampleOptions& opt = {}) {
  detail::require_index(p, k, "verify_asymptotic");
  if (samples == 0) throw std::invalid_argument("verify_asymptotic: samples must be positive");
  const DerivedParams d = derive(p);
  AsymptoticReport rep;
  rep.k = k;
  rep.samples = samples;
  rep.predicted_scale = asymptotic_correction_scale(p, d, k);

  struct Worst {
    double err;
    std::size_t index;
  };
  const double s = d.s_at(k);
  const double logT = d.logT_at(k);
  const std::int64_t mk = d.m_at(k);
  const std::int64_t nk = p.n(k);
  const auto N = static_cast<std::int64_t>(samples);
  auto parts = detail::batched<Worst>(
      samples, opt, Worst{0.0, 0},
      [&](std::size_t i) {
        const auto j = static_cast<std::int64_t>(i);
        const Cartesian z = s * detail::turn_phasor(1, j, N);
        const LogValue h = eval_h(z, p).value;
        Cartesian scaled{0.0, 0.0};  // h / T_k
        if (!h.is_zero()) scaled = std::exp(h.polar().logmod - logT) * unit_phasor(h.polar().arg);
        const Cartesian model = detail::turn_phasor(mk, j, N) * (1.0 + kE * detail::turn_phasor(nk, j, N));
        return Worst{std::abs(scaled - model) / (kE - 1.0), i};
      },
      [](Worst a, Worst b) { return b.err > a.err ? b : a; });
  Worst worst = parts.front();
  for (const Worst& w : parts)
    if (w.err > worst.err) worst = w;
  rep.max_rel_err = worst.err;
  rep.argmax_t = kTwoPi * static_cast<double>(worst.index) / static_cast<double>(samples);
  return rep;
}

// ---------------------------------------------------------------------------
// Re h(b_{k,ν}) >= T_k at the probe points

struct ProbeRatio {
  std::int64_t nu = 0;
  double re_h_at_b = 0.0;  // may be ±inf when Re h leaves double range
  double logT = 0.0;
  double ratio = 0.0;      // Re h(b) / T_k
};

struct ProbeReport {
  std::size_t k = 0;
  std::int64_t n_k = 0;
  std::vector<ProbeRatio> entries;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::int64_t argmin_nu = 0;
  // ratio >= 1 for every evaluated ν. Only claimed for large k.
  bool advisory_pass = false;
};

inline ProbeRatio probe_ratio(const ProbePoint& pp, const ParamSeq& p) {
  ProbeRatio r;
  r.nu = pp.nu;
  r.logT = pp.logT;
  const LogValue h = eval_h(pp.b, p).value;
  if (h.is_zero()) return r;
  const double c = std::cos(h.polar().arg);
  r.ratio = std::exp(h.polar().logmod - pp.logT) * c;
  r.re_h_at_b = std::exp(h.polar().logmod) * c;
  return r;
}

/// Evaluates every ν when n_k <= max_nu, otherwise max_nu evenly spaced ν.
inline ProbeReport verify_probe_ratios(const ParamSeq& p, std::size_t k, std::size_t max_nu = 4096,
                                       const SampleOptions& opt = {}) {
  detail::require_index(p, k, "verify_probe");
  const DerivedParams d = derive(p);
  ProbeReport rep;
  rep.k = k;
  rep.n_k = p.n(k);
  const auto count = static_cast<std::size_t>(std::min<std::int64_t>(rep.n_k, static_cast<std::int64_t>(std::max<std::size_t>(1, max_nu))));
  rep.entries.resize(count);
  parallel_for(count, opt.threads, [&](std::size_t i) {
    const auto nu = static_cast<std::int64_t>(static_cast<__int128>(i) * rep.n_k / static_cast<__int128>(count));
    rep.entries[i] = probe_ratio(probe_point(k, nu, p, d), p);
  });
  for (const ProbeRatio& e : rep.entries) {
    if (e.ratio < rep.min_ratio) {
      rep.min_ratio = e.ratio;
      rep.argmin_nu = e.nu;
    }
  }
  rep.advisory_pass = rep.min_ratio >= 1.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Obstruction chain

struct ChainLink {
  std::string name;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ObstructionReport {
  std::size_t k = 0;
  std::int64_t n_k = 0;
  double r_k = 0.0, s_k = 0.0, logT = 0.0;

  double t_k = 0.0;
  std::int64_t nu = 0;
  double delta = 0.0;  // n_k t_k = ν + δ
  double theta = 0.0;  // θ_ν
  Cartesian z_k, a_k, b_k;

  double dist_a = 0.0, dist_b = 0.0;
  double radius_10 = 0.0, radius_20 = 0.0;
  bool a_in_disk = false, b_in_disk = false;
  std::optional<double> rho_ab;  // ρ_{D(z_k, 20 r_k/n_k)}(a_k, b_k)
  double rho_upper = 0.0;        // 2 log 3

  bool h_a_is_zero = false;
  Cartesian f_a;
  double log_f_a = 0.0;
  double probe_ratio = 0.0;  // Re h(b_k) / T_k
  double log_f_b = 0.0;
  bool f_b_escaped = false;
  bool image_bounds_ok = false;

  Cartesian c;
  std::optional<double> rho_lower_images;   // ½ log((r_k² - |c|)/(r_k + 1 + |c|))
  std::optional<double> omitted_fa_fb;   // ½ |log |f(b)-c|/|f(a)-c||

  double log_abs_h_z = 0.0;      // ln |h(z_k)|
  double log_ratio_lower = 0.0;  // ln n_k - 4 r_k^{m_k} - ln(20 r_k)
  std::optional<double> rho_fz_z_lower;  // ½ |log|e^{h(z_k)}/(z_k - c) + 1||, when c in D(z_k, 20 r_k/n_k)

  double pinch_lower = 0.0;  // ½ log(r_k - 1)
  double K_bound = 0.0;
  bool pinch_exceeds_K = false;

  std::vector<ChainLink> links;
};

struct AngleSplit {
  std::int64_t nu = 0;
  double delta = 0.0;
};

/// n t = ν + δ with ν integer in [0, n-1] and δ in [0, 1), the product formed
/// exactly in double-double.
inline AngleSplit split_angle(std::int64_t n, double t) {
  const double n_hi = static_cast<double>((n >> 32) << 32);
  const double n_lo = static_cast<double>(n & 0xffffffffLL);
  const detail::DoubleDouble prod = detail::dd_add(detail::two_prod(n_hi, t), detail::two_prod(n_lo, t));
  double whole = std::floor(prod.hi);
  double frac = (prod.hi - whole) + prod.lo;
  if (frac < 0.0) {
    whole -= 1.0;
    frac += 1.0;
  }
  if (frac >= 1.0) {
    whole += 1.0;
    frac -= 1.0;
  }
  auto nu = static_cast<std::int64_t>(whole);
  if (nu < 0) {
    nu = 0;
    frac = 0.0;
  } else if (nu >= n) {
    nu = n - 1;
    frac = std::nextafter(1.0, 0.0);
  }
  return {nu, frac};
}

namespace detail {

// e^{iΔ} - 1 without cancellation.
inline Cartesian expm1_i(double delta) {
  const double h = std::sin(0.5 * delta);
  return {-2.0 * h * h, std::sin(delta)};
}

}  // namespace detail

inline ObstructionReport obstruction_chain(const ParamSeq& p, std::size_t k, double t_k, Cartesian c, double K_bound) {
  detail::require_index(p, k, "obstruction_chain");
  if (!(t_k >= 0.0 && t_k < 1.0)) throw std::invalid_argument("obstruction_chain: t_k must lie in [0, 1)");
  if (!(K_bound > 0.0)) throw std::invalid_argument("obstruction_chain: K_bound must be positive");
  const DerivedParams d = derive(p);
  ObstructionReport rep;
  rep.k = k;
  rep.n_k = p.n(k);
  rep.r_k = p.r(k);
  rep.s_k = d.s_at(k);
  rep.logT = d.logT_at(k);
  rep.t_k = t_k;
  rep.c = c;
  rep.K_bound = K_bound;
  const double n = static_cast<double>(rep.n_k);
  const double r = rep.r_k;
  const double s = rep.s_k;

  const AngleSplit split = split_angle(rep.n_k, t_k);
  rep.nu = split.nu;
  rep.delta = split.delta;
  const ProbePoint pp = probe_point(k, rep.nu, p, d);
  rep.theta = pp.theta;
  rep.z_k = std::polar(r, kTwoPi * t_k);
  rep.a_k = pp.a;
  rep.b_k = pp.b;

  // Offsets from z_k via the small angles, so they keep full relative accuracy
  // even when r_k/n_k is near the rounding level of z_k.
  const double angle_a = (1.0 - 2.0 * rep.delta) * kPi / n;
  const double angle_b = kTwoPi * (rep.theta - rep.delta) / n;
  const Cartesian unit_z = rep.z_k / r;
  const Cartesian off_b = rep.z_k * ((1.0 + 1.0 / n) * detail::expm1_i(angle_b) + 1.0 / n);
  rep.dist_a = 2.0 * r * std::fabs(std::sin(0.5 * angle_a));
  rep.dist_b = std::abs(off_b);
  rep.radius_10 = 10.0 * r / n;
  rep.radius_20 = 20.0 * r / n;
  rep.a_in_disk = rep.dist_a < rep.radius_10;
  rep.b_in_disk = rep.dist_b < rep.radius_10;
  rep.rho_upper = 2.0 * std::log(3.0);
  auto& links = rep.links;
  links.push_back({"a_k in D(z_k, 10 r_k/n_k)", rep.a_in_disk, rep.dist_a, rep.radius_10});
  links.push_back({"b_k in D(z_k, 10 r_k/n_k)", rep.b_in_disk, rep.dist_b, rep.radius_10});
  {
    const double scale = n / 20.0;  // 1 / radius_20, in units of r
    const Cartesian u = unit_z * detail::expm1_i(angle_a) * scale;
    const Cartesian v = unit_z * ((1.0 + 1.0 / n) * detail::expm1_i(angle_b) + 1.0 / n) * scale;
    ChainLink l{"rho_D(z_k,20r_k/n_k)(a_k, b_k) <= 2 log 3", false,
                std::numeric_limits<double>::infinity(), rep.rho_upper};
    if (std::abs(u) < 1.0 && std::abs(v) < 1.0) {
      rep.rho_ab = unit_disk_distance(u, v);
      l.lhs = *rep.rho_ab;
      l.holds = rep.a_in_disk && rep.b_in_disk && l.lhs <= l.rhs + 1e-12;
    }
    links.push_back(l);
  }

  // f(a_k) = a_k + 1 since a_k is a zero of h.
  const EvalResult fa = eval_f(rep.a_k, p);
  rep.h_a_is_zero = eval_h(rep.a_k, p).value.is_zero();
  rep.f_a = fa.cartesian.value_or(Cartesian{std::numeric_limits<double>::infinity(), 0.0});
  rep.log_f_a = fa.value.logmod();
  links.push_back({"h(a_k) = 0", rep.h_a_is_zero, 0.0, 0.0});
  const bool link_fa = std::abs(rep.f_a) <= r + 1.0;
  links.push_back({"|f(a_k)| <= r_k + 1", link_fa, std::abs(rep.f_a), r + 1.0});

  const ProbeRatio pr = probe_ratio(pp, p);
  rep.probe_ratio = pr.ratio;
  links.push_back({"Re h(b_k) >= T_k", pr.ratio >= 1.0, pr.ratio, 1.0});
  links.push_back({"T_k >= s_k/r_1 (log form)", rep.logT >= std::log(s / p.r(1)), rep.logT, std::log(s / p.r(1))});
  links.push_back({"e^{s_k/r_1} - s_k >= s_k^2 (log form)", s / p.r(1) >= std::log(s * s + s), s / p.r(1),
                   std::log(s * s + s)});

  const EvalResult fb = eval_f(rep.b_k, p);
  rep.f_b_escaped = fb.regime == Regime::Escaped;
  rep.log_f_b = fb.value.logmod();
  const bool link_fb = rep.log_f_b >= 2.0 * std::log(s);
  links.push_back({"|f(b_k)| >= s_k^2 (log form)", link_fb, rep.log_f_b, 2.0 * std::log(s)});
  rep.image_bounds_ok = link_fa && link_fb;

  const double abs_c = std::abs(c);
  if (r * r > abs_c) rep.rho_lower_images = 0.5 * std::log((r * r - abs_c) / (r + 1.0 + abs_c));
  if (rep.f_a != c) {
    double log_fb_minus_c;
    if (fb.cartesian) {
      log_fb_minus_c = *fb.cartesian == c ? -std::numeric_limits<double>::infinity() : std::log(std::abs(*fb.cartesian - c));
    } else {
      log_fb_minus_c = rep.log_f_b;  // |c| is negligible against |f(b_k)|
    }
    if (std::isfinite(log_fb_minus_c))
      rep.omitted_fa_fb = 0.5 * std::fabs(log_fb_minus_c - std::log(std::abs(rep.f_a - c)));
  }
  {
    ChainLink l{"omitted-point bound at f(a_k), f(b_k) >= image formula", false,
                rep.omitted_fa_fb.value_or(std::numeric_limits<double>::quiet_NaN()),
                rep.rho_lower_images.value_or(std::numeric_limits<double>::quiet_NaN())};
    l.holds = rep.omitted_fa_fb && rep.rho_lower_images && *rep.omitted_fa_fb >= *rep.rho_lower_images - 1e-12;
    links.push_back(l);
    ChainLink contra{"image lower bound > disk upper bound", false,
                     rep.rho_lower_images.value_or(std::numeric_limits<double>::quiet_NaN()), rep.rho_upper};
    contra.holds = rep.rho_lower_images && *rep.rho_lower_images > rep.rho_upper;
    links.push_back(contra);
  }

  // Second half: a boundary point c_k inside D(z_k, 20 r_k/n_k).
  const EvalResult hz = eval_h(rep.z_k, p);
  rep.log_abs_h_z = hz.value.logmod();
  const double log_growth_bound = std::log(4.0) + static_cast<double>(d.m_at(k)) * std::log(r);
  links.push_back({"|h(z_k)| <= 4 r_k^m_k (log form)", rep.log_abs_h_z <= log_growth_bound, rep.log_abs_h_z,
                   log_growth_bound});
  const double inner = static_cast<double>(d.m_at(k)) * std::log(r);
  rep.log_ratio_lower = std::log(n) - 4.0 * std::exp(inner) - std::log(20.0 * r);
  links.push_back({"n_k exp(-4 r_k^m_k)/(20 r_k) >= r_k (log form)", rep.log_ratio_lower >= std::log(r),
                   rep.log_ratio_lower, std::log(r)});
  if (std::abs(c - rep.z_k) < rep.radius_20 && c != rep.z_k && !hz.value.is_zero()) {
    const LogValue z_minus_c = from_cartesian(rep.z_k - c);
    const LogComplex e_h =
        hz.cartesian ? exp_of(*hz.cartesian) : LogComplex{std::numeric_limits<double>::infinity(), 0.0};
    const LogValue ratio = LogComplex{e_h.logmod - z_minus_c.polar().logmod,
                                      normalize_arg(e_h.arg - z_minus_c.polar().arg)};
    rep.rho_fz_z_lower = 0.5 * std::fabs(add_one(ratio).logmod());
  }

  rep.pinch_lower = 0.5 * std::log(r - 1.0);
  rep.pinch_exceeds_K = rep.pinch_lower > K_bound;
  links.push_back({"(1/2) log(r_k - 1) > K", rep.pinch_exceeds_K, rep.pinch_lower, K_bound});
  return rep;
}

}  // namespace bakerlab
