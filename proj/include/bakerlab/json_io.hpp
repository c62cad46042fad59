#pragma once
// JSON parameter files and report serialization.
//
// Parameter files look like {"r": [2, 4], "n": [1, 2844000000]}; n must be
// written as exact integers.

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bakerlab/dynamics.hpp"
#include "bakerlab/hfun.hpp"
#include "bakerlab/params.hpp"
#include "bakerlab/verify.hpp"

namespace bakerlab {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ParamSeq params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("n"))
    throw ConfigError("params: expected an object with arrays \"r\" and \"n\"");
  const json& jr = j.at("r");
  const json& jn = j.at("n");
  if (!jr.is_array() || !jn.is_array()) throw ConfigError("params: \"r\" and \"n\" must be arrays");
  std::vector<double> r;
  std::vector<std::int64_t> n;
  for (const auto& v : jr) {
    if (!v.is_number()) throw ConfigError("params: r entries must be numbers");
    r.push_back(v.get<double>());
  }
  for (const auto& v : jn) {
    if (!v.is_number_integer()) throw ConfigError("params: n entries must be exact integers");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      throw ConfigError("params: n entry exceeds 63 bits");
    n.push_back(v.get<std::int64_t>());
  }
  try {
    return ParamSeq(std::move(r), std::move(n));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline ParamSeq load_params(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open params file " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("params file " + path + ": " + e.what());
  }
  return params_from_json(j);
}

/// Non-finite doubles become strings ("inf", "-inf", "nan") so reports stay
/// lossless.
inline json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

inline json cplx(Cartesian z) { return json::array({num(z.real()), num(z.imag())}); }

inline json to_json(const ParamSeq& p) { return {{"r", p.radii()}, {"n", p.degrees()}}; }

inline json to_json(const DerivedParams& d) {
  json logT = json::array();
  for (double v : d.logT) logT.push_back(num(v));
  return {{"m", d.m}, {"s", d.s}, {"logT", logT}};
}

inline json to_json(const ValidityReport& rep) {
  json clauses = json::array();
  for (const auto& c : rep.clauses)
    clauses.push_back(
        {{"k", c.k}, {"clause", c.clause}, {"status", to_string(c.status)}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}});
  return {{"overall", rep.overall}, {"clauses", clauses}};
}

inline json to_json(const LogValue& v) {
  if (v.is_zero()) return {{"zero", true}, {"value", json::array({0.0, 0.0})}};
  json j{{"zero", false}, {"logmod", num(v.polar().logmod)}, {"arg", num(v.polar().arg)}};
  if (auto c = try_cartesian(v)) j["value"] = cplx(*c);
  else j["value"] = nullptr;
  return j;
}

inline json to_json(const EvalResult& r) {
  json j = to_json(r.value);
  if (r.cartesian) j["value"] = cplx(*r.cartesian);
  j["trunc_bound"] = num(r.trunc_bound);
  j["unbounded_tail"] = r.unbounded_tail();
  j["regime"] = to_string(r.regime);
  if (r.perturbation_log) j["perturbation_log"] = num(*r.perturbation_log);
  return j;
}

inline json to_json(const GrowthReport& r) {
  return {{"check", "growth"},
          {"k", r.k},
          {"samples", r.samples},
          {"max_log_abs_h", num(r.max_log_abs_h)},
          {"max_abs_h", num(std::exp(r.max_log_abs_h))},
          {"argmax_t", r.argmax_t},
          {"bound_log", num(r.bound_log)},
          {"margin", num(r.margin)},
          {"preconditions_met", r.preconditions_met},
          {"pass", r.pass}};
}

inline json to_json(const AsymptoticReport& r) {
  return {{"check", "asymptotic"},
          {"k", r.k},
          {"samples", r.samples},
          {"max_rel_err", num(r.max_rel_err)},
          {"argmax_t", r.argmax_t},
          {"predicted_scale", num(r.predicted_scale)}};
}

inline json to_json(const ProbeReport& r) {
  return {{"check", "probe"},
          {"k", r.k},
          {"n_k", r.n_k},
          {"evaluated", r.entries.size()},
          {"min_ratio", num(r.min_ratio)},
          {"argmin_nu", r.argmin_nu},
          {"advisory_pass", r.advisory_pass}};
}

inline json to_json(const ObstructionReport& r) {
  json links = json::array();
  for (const auto& l : r.links) links.push_back({{"name", l.name}, {"holds", l.holds}, {"lhs", num(l.lhs)}, {"rhs", num(l.rhs)}});
  return {{"k", r.k},
          {"n_k", r.n_k},
          {"r_k", r.r_k},
          {"s_k", r.s_k},
          {"logT", num(r.logT)},
          {"t_k", r.t_k},
          {"nu", r.nu},
          {"delta", r.delta},
          {"theta", r.theta},
          {"z_k", cplx(r.z_k)},
          {"a_k", cplx(r.a_k)},
          {"b_k", cplx(r.b_k)},
          {"dist_a", r.dist_a},
          {"dist_b", r.dist_b},
          {"radius_10", r.radius_10},
          {"radius_20", r.radius_20},
          {"a_in_disk", r.a_in_disk},
          {"b_in_disk", r.b_in_disk},
          {"rho_ab", num(r.rho_ab)},
          {"rho_upper", r.rho_upper},
          {"h_a_is_zero", r.h_a_is_zero},
          {"f_a", cplx(r.f_a)},
          {"log_f_a", num(r.log_f_a)},
          {"probe_ratio", num(r.probe_ratio)},
          {"log_f_b", num(r.log_f_b)},
          {"f_b_escaped", r.f_b_escaped},
          {"image_bounds_ok", r.image_bounds_ok},
          {"c", cplx(r.c)},
          {"rho_lower_images", num(r.rho_lower_images)},
          {"omitted_fa_fb", num(r.omitted_fa_fb)},
          {"log_abs_h_z", num(r.log_abs_h_z)},
          {"log_ratio_lower", num(r.log_ratio_lower)},
          {"rho_fz_z_lower", num(r.rho_fz_z_lower)},
          {"pinch_lower", r.pinch_lower},
          {"K_bound", r.K_bound},
          {"pinch_exceeds_K", r.pinch_exceeds_K},
          {"links", links}};
}

inline json to_json(const OrbitRecord& rec) {
  json pts = json::array();
  for (const auto& z : rec.points) pts.push_back(cplx(z));
  json j{{"status", to_string(rec.status())},
         {"escape_step", rec.escape_step ? json(*rec.escape_step) : json(nullptr)},
         {"translation_step", rec.translation_step ? json(*rec.translation_step) : json(nullptr)},
         {"max_steps", rec.max_steps},
         {"points", pts}};
  if (rec.tail) j["tail"] = {{"logmod", num(rec.tail->logmod)}, {"arg", num(rec.tail->arg)}};
  else j["tail"] = nullptr;
  return j;
}

}  // namespace bakerlab
