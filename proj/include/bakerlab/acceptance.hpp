#pragma once
// The acceptance suite: eleven criteria with frozen reference values and
// runtime limits. Shared by the acceptance test binary and `bakerlab selftest`.
//
// Reference values come from tests/oracle/oracle.py (mpmath, 200 bits).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bakerlab/dynamics.hpp"
#include "bakerlab/gridfile.hpp"
#include "bakerlab/hfun.hpp"
#include "bakerlab/hyperbolic.hpp"
#include "bakerlab/hypsample.hpp"
#include "bakerlab/params.hpp"
#include "bakerlab/render.hpp"
#include "bakerlab/verify.hpp"

namespace bakerlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;  // seconds
};

namespace oracle {
inline constexpr double kGrowthMaxK3 = 578.008819580078125;
inline constexpr double kAsymK3 = 0.1447398930387078734;
inline constexpr double kAsymK4 = 0.035166237951194696639;
inline constexpr double kAsymTolerance = 0.15;
inline constexpr double kDoublingProbeRatio = 4.0849780043325319736;
inline constexpr double kG1 = 0.71240485121370045712;
inline constexpr double kHalfLog3 = 0.5493061443340548457;
inline constexpr double kHalfLog11Tenths = 0.047655089902162430022;
inline constexpr double kPaper2Threshold = 2843555366.5625;  // 320 e^16
}  // namespace oracle

namespace detail {

inline std::string fmt(const char* f, auto... args) {
  char buf[2048];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

inline Outcome criterion_zeros() {
  const ParamSeq p = make_toy("doubling");
  std::size_t total = 0, exact = 0;
  for (std::size_t k = 1; k <= p.size(); ++k)
    for (std::int64_t nu = 0; nu < p.n(k); ++nu) {
      ++total;
      const Cartesian a = std::polar(p.r(k), kPi * static_cast<double>(2 * nu + 1) / static_cast<double>(p.n(k)));
      const EvalResult h = eval_h(a, p);
      const EvalResult f = eval_f(a, p);
      const Cartesian shifted{a.real() + 1.0, a.imag()};
      if (h.value.is_zero() && f.cartesian && f.cartesian->real() == shifted.real() &&
          f.cartesian->imag() == shifted.imag())
        ++exact;
    }
  return {exact == total && total == 30, fmt("%zu/%zu zeros give h = 0 and f = a + 1 exactly", exact, total)};
}

inline Outcome criterion_truncation() {
  const ParamSeq p = make_toy("doubling");
  const std::size_t K = p.size();
  std::mt19937_64 rng(20240601);
  std::size_t ok = 0, finite = 0;
  const std::size_t samples = 1000;
  double worst = 0.0;  // largest error / bound among finite bounds
  EvalOptions trunc;
  trunc.factors = K - 1;
  for (std::size_t i = 0; i < samples; ++i) {
    const Cartesian z = random_in_disk(rng, {0.0, 0.0}, p.r(K) / 2.0);
    const EvalResult full = eval_h(z, p);
    const EvalResult part = eval_h(z, p, trunc);
    const double bound = truncation_bound(z, p, K - 1);
    if (part.value.is_zero()) {
      ok += full.value.is_zero();
      continue;
    }
    const double rel = std::abs(*full.cartesian - *part.cartesian) / std::abs(*part.cartesian);
    if (std::isfinite(bound)) {
      ++finite;
      worst = std::max(worst, rel / bound);
    }
    ok += rel <= bound;
  }
  return {ok == samples,
          fmt("%zu/%zu within bound; %zu with finite bound, max error/bound %.3g", ok, samples, finite, worst)};
}

inline Outcome criterion_growth(unsigned threads) {
  const ParamSeq p = make_toy("doubling");
  SampleOptions opt;
  opt.threads = threads;
  bool pass = true;
  std::string detail;
  double max3 = 0.0;
  for (std::size_t k = 2; k <= 4; ++k) {
    const GrowthReport g = verify_growth_on_rk(p, k, 4096, opt);
    pass = pass && g.pass;
    if (k == 3) max3 = std::exp(g.max_log_abs_h);
    detail += fmt("k=%zu max %.6g bound %.6g; ", k, std::exp(g.max_log_abs_h), std::exp(g.bound_log));
  }
  const bool near = std::fabs(max3 - oracle::kGrowthMaxK3) <= 0.5;
  detail += fmt("k=3 vs oracle %.10g", oracle::kGrowthMaxK3);
  return {pass && near, detail};
}

inline Outcome criterion_asymptotic(unsigned threads) {
  const ParamSeq p = make_toy("steep");
  SampleOptions opt;
  opt.threads = threads;
  const AsymptoticReport a3 = verify_asymptotic_on_sk(p, 3, 8192, opt);
  const AsymptoticReport a4 = verify_asymptotic_on_sk(p, 4, 8192, opt);
  const bool pass = a4.max_rel_err <= oracle::kAsymTolerance && a4.max_rel_err < a3.max_rel_err &&
                    std::fabs(a3.max_rel_err - oracle::kAsymK3) <= 1e-9 &&
                    std::fabs(a4.max_rel_err - oracle::kAsymK4) <= 1e-9;
  return {pass, fmt("k=3 %.12g (oracle %.12g), k=4 %.12g (oracle %.12g), tolerance %.2f", a3.max_rel_err,
                    oracle::kAsymK3, a4.max_rel_err, oracle::kAsymK4, oracle::kAsymTolerance)};
}

inline Outcome criterion_probe(unsigned threads) {
  SampleOptions opt;
  opt.threads = threads;
  const ProbeReport steep = verify_probe_ratios(make_toy("steep"), 4, 4096, opt);
  const ParamSeq dbl = make_toy("doubling");
  const ProbeRatio r0 = probe_ratio(probe_point(2, 0, dbl), dbl);
  const bool pass = steep.min_ratio >= 1.0 && steep.entries.size() == 512 &&
                    std::fabs(r0.ratio - oracle::kDoublingProbeRatio) <= 0.05;
  return {pass, fmt("steep k=4 min ratio %.10g over %zu probes; doubling k=2 nu=0 ratio %.10g (oracle %.10g)",
                    steep.min_ratio, steep.entries.size(), r0.ratio, oracle::kDoublingProbeRatio)};
}

inline Outcome criterion_theta() {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_residual = 0.0;
  bool positive = true;
  for (int i = 0; i < 10000; ++i) {
    const double phi = u(rng);
    const Cartesian pv = rotated_probe_factor(phi, theta(phi));
    worst_residual = std::max(worst_residual, std::fabs(pv.imag()));
    positive = positive && pv.real() > 0.0;
  }
  double min_p = std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (const char* name : {"doubling", "steep"}) {
    const ParamSeq p = make_toy(name);
    const DerivedParams d = derive(p);
    for (std::size_t k = 2; k <= 4; ++k)
      for (std::int64_t nu = 0; nu < p.n(k); ++nu, ++count) min_p = std::min(min_p, probe_point(k, nu, p, d).p);
  }
  const bool pass = worst_residual <= 1e-12 && positive && min_p >= kE - 1.0;
  return {pass, fmt("max residual %.3g, positive %s, min p_nu %.12g over %zu probes (e-1 = %.12g)", worst_residual,
                    positive ? "yes" : "no", min_p, count, kE - 1.0)};
}

inline Outcome criterion_hyperbolic() {
  std::mt19937_64 rng(99);
  const double d05 = disk_distance({0.0, 0.0}, {0.5, 0.0}, DiskSpec::unit());
  const bool base = std::fabs(d05 - std::log(3.0)) <= 1e-12;
  const PropertyCount checks[] = {check_half_disk(rng, 10000), check_omitted_point(rng, 10000),
                                  check_schwarz(rng, 1000), check_monotone(rng, 10000)};
  bool pass = base;
  std::string detail = fmt("rho(0, 0.5) - log 3 = %.2g", d05 - std::log(3.0));
  for (const PropertyCount& c : checks) {
    pass = pass && c.pass();
    detail += fmt("; %s %zu/%zu", c.check.c_str(), c.passed, c.samples);
  }
  return {pass, detail};
}

inline Outcome criterion_newton(unsigned threads) {
  const ParamSeq p = make_toy("doubling");
  std::mt19937_64 rng(31337);
  std::vector<Cartesian> pts(100), via(20), ends(20);
  for (auto& z : pts) z = random_in_disk(rng, {0.0, 0.0}, 1.0);
  for (std::size_t i = 0; i < 20; ++i) {
    ends[i] = random_in_disk(rng, {0.0, 0.0}, 1.0);
    via[i] = random_in_disk(rng, {0.0, 0.0}, 1.0);
  }
  std::vector<double> res(pts.size()), path_diff(20);
  parallel_for(pts.size(), threads, [&](std::size_t i) { res[i] = newton_residual(pts[i], p, 1e-3, 1e-10); });
  parallel_for(20, threads, [&](std::size_t i) {
    const Cartesian bent[] = {{0.0, 0.0}, via[i], ends[i]};
    path_diff[i] = std::abs(eval_g(ends[i], p, 1e-10) - eval_g_path(bent, p, 1e-10));
  });
  const double worst_res = *std::max_element(res.begin(), res.end());
  const double worst_path = *std::max_element(path_diff.begin(), path_diff.end());
  const Cartesian g1 = eval_g({1.0, 0.0}, p, 1e-10);
  const bool pass = worst_res <= 1e-6 && worst_path <= 2e-10 && std::fabs(g1.real() - oracle::kG1) <= 1e-3 &&
                    std::fabs(g1.imag()) <= 1e-3;
  return {pass, fmt("max newton residual %.3g; max path difference %.3g; g(1) = %.12g (oracle %.12g)", worst_res,
                    worst_path, g1.real(), oracle::kG1)};
}

inline Outcome criterion_obstruction() {
  const ParamSeq p = make_toy("paper2");
  const double rad10 = 10.0 * p.r(2) / static_cast<double>(p.n(2));
  const ObstructionReport probe = obstruction_chain(p, 2, 0.1, {0.0, 0.0}, 5.0);
  const Cartesian c = probe.z_k + 15.0 * p.r(2) / static_cast<double>(p.n(2));
  const ObstructionReport rep = obstruction_chain(p, 2, 0.1, c, 5.0);
  const ObstructionReport rep5 = obstruction_chain(p, 2, 0.1, {5.0, 0.0}, 5.0);
  const Cartesian shifted{rep.a_k.real() + 1.0, rep.a_k.imag()};
  const bool exact_fa = rep.h_a_is_zero && rep.f_a == shifted;
  const bool pass = exact_fa && std::abs(rep.f_a) <= p.r(2) + 1.0 && rep.dist_a <= rad10 && rep.dist_b <= rad10 &&
                    std::fabs(rep.pinch_lower - oracle::kHalfLog3) <= 1e-12 && rep.pinch_exceeds_K == false &&
                    rep5.rho_lower_images && std::fabs(*rep5.rho_lower_images - oracle::kHalfLog11Tenths) <= 1e-12;
  return {pass, fmt("|f(a)| = %.12g (exact a+1: %s); dist_a %.4g, dist_b %.4g <= %.4g; pinch %.15g; "
                    "c = 5 lower bound %.15g (oracle %.15g)",
                    std::abs(rep.f_a), exact_fa ? "yes" : "no", rep.dist_a, rep.dist_b, rad10, rep.pinch_lower,
                    rep5.rho_lower_images.value_or(std::nan("")), oracle::kHalfLog11Tenths)};
}

inline Outcome criterion_determinism() {
  const ParamSeq p = make_toy("doubling");
  const GridRect rect{{-6.0, -6.0}, {6.0, 6.0}};
  OrbitOptions opt;
  std::vector<std::uint8_t> ref_grid, ref_img;
  bool same = true;
  for (unsigned t : {1u, 4u, 8u}) {
    const EscapeGrid g = classify_grid(rect, 256, 256, p, opt, t);
    auto gb = encode_grid(g);
    auto ib = encode_ppm(render_escape(g, "rainbow"));
    if (t == 1) {
      ref_grid = std::move(gb);
      ref_img = std::move(ib);
    } else {
      same = same && gb == ref_grid && ib == ref_img;
    }
  }
  return {same, fmt("256x256 grid (%zu bytes) and image (%zu bytes) identical at 1, 4, 8 threads: %s",
                    ref_grid.size(), ref_img.size(), same ? "yes" : "no")};
}

inline Outcome criterion_validation() {
  const ValidityReport pp = validate_growth(make_toy("paper2"));
  const ValidityReport dbl = validate_growth(make_toy("doubling"));
  const ValidityReport stp = validate_growth(make_toy("steep"));
  auto failing = [](const ValidityReport& r) {
    std::string s;
    for (const ClauseCheck& c : r.clauses)
      if (c.status != ClauseStatus::Pass) s += (s.empty() ? "" : ", ") + c.clause + " @k=" + std::to_string(c.k);
    return s;
  };
  const bool diag = !failing(dbl).empty() && !failing(stp).empty() && failing(pp).empty();
  const bool threshold = static_cast<double>(make_toy("paper2").n(2)) >= oracle::kPaper2Threshold;
  const bool pass = pp.overall && !dbl.overall && !stp.overall && diag && threshold;
  return {pass, fmt("paper2 %s (n_2 = %lld >= 320e^16 = %.4f); doubling %s [%s]; steep %s [%s]",
                    pp.overall ? "accepted" : "rejected", static_cast<long long>(make_toy("paper2").n(2)),
                    oracle::kPaper2Threshold, dbl.overall ? "accepted" : "rejected", failing(dbl).c_str(),
                    stp.overall ? "accepted" : "rejected", failing(stp).c_str())};
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(unsigned threads = 1) {
  using Clock = std::chrono::steady_clock;
  struct Entry {
    int id;
    const char* name;
    double limit;
    std::function<detail::Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "zeros translate by exactly one", 1, detail::criterion_zeros},
      {2, "truncation bound", 5, detail::criterion_truncation},
      {3, "growth bound on |z| = r_k", 10, [=] { return detail::criterion_growth(threads); }},
      {4, "asymptotic form on |z| = s_k", 30, [=] { return detail::criterion_asymptotic(threads); }},
      {5, "probe ratios Re h(b)/T_k", 30, [=] { return detail::criterion_probe(threads); }},
      {6, "theta and p_nu", 5, detail::criterion_theta},
      {7, "hyperbolic metric suite", 10, detail::criterion_hyperbolic},
      {8, "Newton identity for g", 30, [=] { return detail::criterion_newton(threads); }},
      {9, "obstruction chain", 1, detail::criterion_obstruction},
      {10, "thread-count determinism", 60, detail::criterion_determinism},
      {11, "validation gate", 1, detail::criterion_validation},
  };
  std::vector<CriterionResult> out;
  for (const Entry& e : entries) {
    CriterionResult r{e.id, e.name, false, "", 0.0, e.limit};
    const auto t0 = Clock::now();
    try {
      const detail::Outcome o = e.run();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.seconds > r.limit) {
      r.detail += detail::fmt(" [over time limit: %.2fs > %.0fs]", r.seconds, r.limit);
      r.pass = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  return detail::fmt("%s %2d %s (%.2fs): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) + r.detail;
}

}  // namespace bakerlab
