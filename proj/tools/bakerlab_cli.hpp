#pragma once
// Command-line front end. run_cli() takes argv-style arguments and explicit
// streams so tests can drive it in-process.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bakerlab/acceptance.hpp"
#include "bakerlab/bakerlab.hpp"
#include "bakerlab/hypsample.hpp"
#include "bakerlab/json_io.hpp"

namespace bakerlab::cli {

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<double> split_numbers(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  if (out.size() != count)
    throw UsageError(std::string(what) + ": expected " + std::to_string(count) + " comma-separated numbers");
  return out;
}

inline Cartesian parse_complex(const std::string& text, const char* what) {
  const auto v = split_numbers(text, 2, what);
  return {v[0], v[1]};
}

inline GridRect parse_rect(const std::string& text) {
  const auto v = split_numbers(text, 4, "--rect");
  return {{v[0], v[1]}, {v[2], v[3]}};
}

struct ParamSource {
  std::string profile;
  std::string file;

  void attach(CLI::App* app) {
    auto* prof = app->add_option("--profile", profile, "built-in profile: doubling, steep, paper2");
    auto* file_opt = app->add_option("--params", file, "parameter JSON file");
    prof->excludes(file_opt);
  }

  ParamSeq load() const {
    if (!file.empty()) return load_params(file);
    if (profile.empty()) throw UsageError("one of --profile or --params is required");
    try {
      return make_toy(profile);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

inline void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bakerlab: explicit entire functions z + e^{h(z)} with infinite-product h"};
  app.require_subcommand(1);
  unsigned threads_opt = 0;
  app.add_option("--threads", threads_opt, "worker threads (default: BAKERLAB_THREADS or hardware)");

  // params
  auto* c_params = app.add_subcommand("params", "show parameters, derived quantities and growth validation");
  ParamSource src_params;
  src_params.attach(c_params);
  bool validate = false;
  c_params->add_flag("--validate", validate, "check the growth conditions clause by clause");

  // eval
  auto* c_eval = app.add_subcommand("eval", "evaluate h, f and optionally g at a point");
  ParamSource src_eval;
  src_eval.attach(c_eval);
  std::string z_text;
  bool want_g = false;
  double tol = 1e-10;
  c_eval->add_option("--z", z_text, "point RE,IM")->required();
  c_eval->add_flag("--g", want_g, "also evaluate g(z) = exp(-int_0^z e^{-h})");
  c_eval->add_option("--tol", tol, "quadrature tolerance");

  // hyp
  auto* c_hyp = app.add_subcommand("hyp", "hyperbolic metric property checks");
  std::string hyp_check;
  std::size_t hyp_samples = 10000;
  std::optional<std::uint64_t> seed;
  c_hyp->add_option("--check", hyp_check, "metric, half-disk, omitted-point, schwarz, monotone, koebe")
      ->required()
      ->check(CLI::IsMember({"metric", "half-disk", "omitted-point", "schwarz", "monotone", "koebe", "lemma1", "lemma2"}));
  c_hyp->add_option("--samples", hyp_samples, "random samples");
  c_hyp->add_option("--seed", seed, "random seed (required for sampled checks)");

  // verify
  auto* c_verify = app.add_subcommand("verify", "check an estimate on the critical circles");
  ParamSource src_verify;
  src_verify.attach(c_verify);
  std::string verify_check;
  std::size_t verify_k = 2;
  std::size_t verify_samples = 4096;
  std::string csv_path;
  c_verify->add_option("--check", verify_check, "growth, asymptotic or probe")
      ->required()
      ->check(CLI::IsMember({"growth", "asymptotic", "probe", "2a", "2b", "2c"}));
  c_verify->add_option("--k", verify_k, "index k >= 2")->required();
  c_verify->add_option("--samples", verify_samples, "samples on the circle (probe: max probes)");
  c_verify->add_option("--csv", csv_path, "write per-sample values to this CSV file");

  // obstruct
  auto* c_obs = app.add_subcommand("obstruct", "replay the inequality chain near the k-th zero circle");
  ParamSource src_obs;
  src_obs.attach(c_obs);
  std::size_t obs_k = 2;
  double obs_t = 0.0;
  std::string obs_c;
  double K_bound = 1.0;
  c_obs->add_option("--k", obs_k, "index k >= 2")->required();
  c_obs->add_option("--t", obs_t, "angle parameter t_k in [0, 1)")->required();
  c_obs->add_option("--c", obs_c, "boundary point RE,IM")->required();
  c_obs->add_option("--K-bound", K_bound, "the constant K to compare the pinch against")->required();

  // orbit
  auto* c_orbit = app.add_subcommand("orbit", "iterate f from a point");
  ParamSource src_orbit;
  src_orbit.attach(c_orbit);
  std::string orbit_z;
  std::size_t steps = 100;
  double escape_radius = 0.0;
  c_orbit->add_option("--z", orbit_z, "start point RE,IM")->required();
  c_orbit->add_option("--steps", steps, "maximum iterations");
  c_orbit->add_option("--escape-radius", escape_radius, "escape radius (default 4 r_K)");

  // grid
  auto* c_grid = app.add_subcommand("grid", "classify orbits on a pixel grid and write a BKGRID1 file");
  ParamSource src_grid;
  src_grid.attach(c_grid);
  std::string grid_rect, grid_out;
  std::uint32_t nx = 256, ny = 256;
  std::size_t grid_steps = 100;
  double grid_radius = 0.0;
  c_grid->add_option("--rect", grid_rect, "X0,Y0,X1,Y1")->required();
  c_grid->add_option("--nx", nx, "columns");
  c_grid->add_option("--ny", ny, "rows");
  c_grid->add_option("--steps", grid_steps, "maximum iterations per pixel");
  c_grid->add_option("--escape-radius", grid_radius, "escape radius (default 4 r_K)");
  c_grid->add_option("--out", grid_out, "output grid file")->required();

  // render
  auto* c_render = app.add_subcommand("render", "write PPM images");
  c_render->require_subcommand(1);
  auto* c_rescape = c_render->add_subcommand("escape", "escape-time image from a grid file");
  std::string grid_in, escape_out, palette = "rainbow";
  c_rescape->add_option("--grid", grid_in, "BKGRID1 file")->required();
  c_rescape->add_option("--out", escape_out, "output PPM")->required();
  c_rescape->add_option("--palette", palette, "rainbow, fire or gray");
  auto* c_rphase = c_render->add_subcommand("phase", "phase portrait of h");
  ParamSource src_phase;
  src_phase.attach(c_rphase);
  std::string phase_rect, phase_out;
  std::uint32_t pnx = 256, pny = 256;
  c_rphase->add_option("--rect", phase_rect, "X0,Y0,X1,Y1")->required();
  c_rphase->add_option("--nx", pnx, "columns");
  c_rphase->add_option("--ny", pny, "rows");
  c_rphase->add_option("--out", phase_out, "output PPM")->required();

  // selftest
  auto* c_self = app.add_subcommand("selftest", "run the acceptance suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const unsigned threads = resolve_threads(threads_opt);
  try {
    if (c_params->parsed()) {
      const ParamSeq p = src_params.load();
      json j{{"params", to_json(p)}};
      try {
        j["derived"] = to_json(derive(p));
      } catch (const std::exception& e) {
        j["derived"] = nullptr;
        j["derived_error"] = e.what();
      }
      if (!validate) {
        emit(out, j);
        return kOk;
      }
      const ValidityReport rep = validate_growth(p);
      j["validity"] = to_json(rep);
      emit(out, j);
      return rep.overall ? kOk : kFailed;
    }

    if (c_eval->parsed()) {
      const ParamSeq p = src_eval.load();
      const Cartesian z = parse_complex(z_text, "--z");
      const EvalResult h = eval_h(z, p);
      json jh{{"fn", "h"}, {"z", cplx(z)}};
      jh.update(to_json(h));
      emit(out, jh);
      json jf = json{{"fn", "f"}, {"z", cplx(z)}};
      jf.update(to_json(f_from_h(z, h)));
      emit(out, jf);
      if (want_g) {
        if (!(tol > 0.0)) throw UsageError("--tol must be positive");
        emit(out, {{"fn", "g"}, {"z", cplx(z)}, {"tol", tol}, {"value", cplx(eval_g(z, p, tol))}});
      }
      return kOk;
    }

    if (c_hyp->parsed()) {
      std::string check = hyp_check;
      if (check == "lemma1") check = "omitted-point";
      if (check == "lemma2") check = "half-disk";
      if (check == "metric") {
        const double v = disk_distance({0.0, 0.0}, {0.5, 0.0}, DiskSpec::unit());
        const bool ok = std::fabs(v - std::log(3.0)) <= 1e-12;
        emit(out, {{"check", "metric"}, {"rho_0_half", v}, {"log3", std::log(3.0)}, {"pass", ok}});
        return ok ? kOk : kFailed;
      }
      if (!seed) throw UsageError("hyp --check " + hyp_check + " needs --seed");
      std::mt19937_64 rng(*seed);
      PropertyCount pc;
      if (check == "half-disk") pc = check_half_disk(rng, hyp_samples);
      else if (check == "omitted-point") pc = check_omitted_point(rng, hyp_samples);
      else if (check == "schwarz") pc = check_schwarz(rng, hyp_samples);
      else if (check == "monotone") pc = check_monotone(rng, hyp_samples);
      else pc = check_koebe(rng, hyp_samples);
      emit(out, {{"check", pc.check},
                 {"seed", *seed},
                 {"samples", pc.samples},
                 {"passed", pc.passed},
                 {"failed", pc.samples - pc.passed},
                 {"worst_excess", num(pc.worst)},
                 {"pass", pc.pass()}});
      return pc.pass() ? kOk : kFailed;
    }

    if (c_verify->parsed()) {
      const ParamSeq p = src_verify.load();
      std::string check = verify_check;
      if (check == "2a") check = "growth";
      if (check == "2b") check = "asymptotic";
      if (check == "2c") check = "probe";
      if (verify_k < 2 || verify_k > p.size())
        throw UsageError("--k must satisfy 2 <= k <= " + std::to_string(p.size()));
      if (verify_samples == 0) throw UsageError("--samples must be positive");
      SampleOptions opt;
      opt.threads = threads;
      std::optional<std::ofstream> csv;
      if (!csv_path.empty()) {
        csv.emplace(csv_path);
        if (!*csv) throw ConfigError("cannot open " + csv_path);
        csv->precision(17);
      }
      const DerivedParams d = derive(p);
      if (check == "growth") {
        const GrowthReport rep = verify_growth_on_rk(p, verify_k, verify_samples, opt);
        if (csv) {
          *csv << "i,t,log_abs_h\n";
          for (std::size_t i = 0; i < verify_samples; ++i) {
            const Cartesian z = p.r(verify_k) * detail::turn_phasor(1, static_cast<std::int64_t>(i),
                                                                    static_cast<std::int64_t>(verify_samples));
            *csv << i << ',' << kTwoPi * static_cast<double>(i) / static_cast<double>(verify_samples) << ','
                 << eval_h(z, p).value.logmod() << '\n';
          }
        }
        emit(out, to_json(rep));
        return rep.pass ? kOk : kFailed;
      }
      if (check == "asymptotic") {
        const AsymptoticReport rep = verify_asymptotic_on_sk(p, verify_k, verify_samples, opt);
        if (csv) {
          *csv << "i,t,re_h_over_T,im_h_over_T\n";
          for (std::size_t i = 0; i < verify_samples; ++i) {
            const Cartesian z = d.s_at(verify_k) * detail::turn_phasor(1, static_cast<std::int64_t>(i),
                                                                       static_cast<std::int64_t>(verify_samples));
            const LogValue h = eval_h(z, p).value;
            Cartesian q{0.0, 0.0};
            if (!h.is_zero()) q = std::exp(h.polar().logmod - d.logT_at(verify_k)) * unit_phasor(h.polar().arg);
            *csv << i << ',' << kTwoPi * static_cast<double>(i) / static_cast<double>(verify_samples) << ','
                 << q.real() << ',' << q.imag() << '\n';
          }
        }
        emit(out, to_json(rep));
        return kOk;
      }
      const ProbeReport rep = verify_probe_ratios(p, verify_k, verify_samples, opt);
      if (csv) {
        *csv << "nu,re_h_at_b,logT,ratio\n";
        for (const ProbeRatio& e : rep.entries)
          *csv << e.nu << ',' << e.re_h_at_b << ',' << e.logT << ',' << e.ratio << '\n';
      }
      emit(out, to_json(rep));
      return rep.advisory_pass ? kOk : kFailed;
    }

    if (c_obs->parsed()) {
      const ParamSeq p = src_obs.load();
      if (obs_k < 2 || obs_k > p.size()) throw UsageError("--k must satisfy 2 <= k <= " + std::to_string(p.size()));
      if (!(obs_t >= 0.0 && obs_t < 1.0)) throw UsageError("--t must lie in [0, 1)");
      if (!(K_bound > 0.0)) throw UsageError("--K-bound must be positive");
      emit(out, to_json(obstruction_chain(p, obs_k, obs_t, parse_complex(obs_c, "--c"), K_bound)));
      return kOk;
    }

    if (c_orbit->parsed()) {
      const ParamSeq p = src_orbit.load();
      OrbitOptions opt;
      opt.max_steps = steps;
      opt.escape_radius = escape_radius;
      if (steps < 1) throw UsageError("--steps must be at least 1");
      if (escape_radius != 0.0 && !(escape_radius > p.r(p.size())))
        throw UsageError("--escape-radius must exceed r_K");
      emit(out, to_json(iterate(parse_complex(orbit_z, "--z"), p, opt)));
      return kOk;
    }

    if (c_grid->parsed()) {
      const ParamSeq p = src_grid.load();
      if (nx < 1 || ny < 1) throw UsageError("--nx and --ny must be at least 1");
      OrbitOptions opt;
      opt.max_steps = grid_steps;
      opt.escape_radius = grid_radius;
      const EscapeGrid g = classify_grid(parse_rect(grid_rect), nx, ny, p, opt, threads);
      write_grid(grid_out, g);
      std::size_t counts[4] = {0, 0, 0, 0};
      for (const GridCell& c : g.cells) ++counts[static_cast<int>(c.status)];
      emit(out, {{"grid", grid_out},
                 {"nx", nx},
                 {"ny", ny},
                 {"params_hash", g.params_hash},
                 {"bounded_so_far", counts[0]},
                 {"escaped", counts[1]},
                 {"near_zero_translation", counts[2]},
                 {"escaped_after_translation", counts[3]}});
      return kOk;
    }

    if (c_rescape->parsed()) {
      EscapeGrid g;
      try {
        g = read_grid(grid_in);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      try {
        palette_by_name(palette);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_ppm(escape_out, render_escape(g, palette));
      emit(out, {{"image", escape_out}, {"width", g.nx}, {"height", g.ny}, {"palette", palette}});
      return kOk;
    }

    if (c_rphase->parsed()) {
      const ParamSeq p = src_phase.load();
      if (pnx < 1 || pny < 1) throw UsageError("--nx and --ny must be at least 1");
      write_ppm(phase_out, render_phase(parse_rect(phase_rect), pnx, pny, p, threads));
      emit(out, {{"image", phase_out}, {"width", pnx}, {"height", pny}});
      return kOk;
    }

    if (c_self->parsed()) {
      int failed = 0;
      for (const CriterionResult& r : run_acceptance(threads)) {
        emit(out, {{"criterion", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"limit", r.limit},
                   {"detail", r.detail}});
        failed += !r.pass;
      }
      return failed ? kFailed : kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace bakerlab::cli
