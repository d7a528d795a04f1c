#pragma once

// Machine-readable outputs: a versioned JSON report with every computed
// value, and a CSV summary with one row per check. Numeric formatting is
// fixed (round-trip precision) so identical runs produce byte-identical
// files.

#include <cstdio>
#include <string>

#include "json.hpp"
#include "uvf/verify.hpp"

namespace uvf {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& rep) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema_version"] = 1;
  j["surface"] = rep.surface_label;
  j["field"] = rep.field_label;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["resolutions"] = rep.resolutions;

  const FunctionalValues& fv = rep.primary();
  json f;
  f["vol"] = fv.vol_m;
  f["dirichlet"] = fv.dirichlet;
  f["energy"] = fv.energy;
  f["total_bending"] = fv.total_bending;
  f["field_volume"] = fv.volume_v;
  json bk = json::array();
  for (int k = 1; k <= fv.m; ++k) bk.push_back(fv.bending_k[static_cast<std::size_t>(k - 1)]);
  f["bending_k"] = bk;
  json etas = json::array();
  for (int k = 0; k <= fv.m; ++k) etas.push_back(fv.eta[static_cast<std::size_t>(k)]);
  f["eta_integrals"] = etas;
  f["eta2_minor_form"] = fv.eta2_minor;
  f["abs_sigma_integral"] = fv.abs_sigma_integral;
  j["functionals"] = f;

  json deg;
  deg["value"] = rep.degree.degree;
  deg["raw"] = rep.degree.raw;
  deg["residual"] = rep.degree.residual;
  deg["warning"] = rep.degree_warning;
  j["degree"] = deg;

  json sups;
  sups["script_s"] = rep.sups.script_s;
  json sb = json::array();
  for (int A = 1; A <= rep.sups.m; ++A) sb.push_back(rep.sups.s_bracket[static_cast<std::size_t>(A - 1)]);
  sups["s_bracket"] = sb;
  j["sup_constants"] = sups;

  json diag;
  if (rep.known_volume) {
    diag["vol_closed_form"] = *rep.known_volume;
    diag["vol_rel_deviation"] = std::abs(fv.vol_m - *rep.known_volume) / *rep.known_volume;
  }
  diag["max_unit_dev"] = fv.max_unit_dev;
  diag["max_tangency_dev"] = fv.max_tangency_dev;
  diag["max_normal_dev"] = fv.max_normal_dev;
  diag["max_last_row_a"] = fv.max_last_row_a;
  diag["max_h_asym"] = fv.max_h_asym;
  diag["max_top_coeff"] = fv.max_top_coeff;
  j["diagnostics"] = diag;

  json checks = json::array();
  for (const BoundCheck& c : rep.checks) {
    json jc;
    jc["id"] = c.id;
    jc["kind"] = to_string(c.kind);
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    jc["gap"] = c.gap;
    jc["rel_gap"] = c.rel_gap;
    jc["pass"] = c.pass;
    jc["equality"] = c.equality;
    jc["tol"] = c.tol;
    jc["eq_tol"] = c.eq_tol;
    jc["resolution"] = c.resolution;
    checks.push_back(jc);
  }
  j["checks"] = checks;

  json conv = json::array();
  for (const ConvergenceRow& r : rep.convergence) {
    json jr;
    jr["functional"] = r.functional;
    jr["values"] = r.values;
    jr["rel_diffs"] = r.rel_diffs;
    jr["converged"] = r.converged;
    conv.push_back(jr);
  }
  j["convergence"] = conv;

  j["all_pass"] = rep.all_pass();
  j["all_converged"] = rep.all_converged();
  return j;
}

/// Fixed column order; see the README for the schema.
inline std::string report_to_csv(const VerificationReport& rep) {
  std::string out = "theorem,surface,field,lhs,rhs,gap,pass,equality,resolution\n";
  for (const BoundCheck& c : rep.checks) {
    out += c.id;
    out += ',';
    out += rep.surface_label;
    out += ',';
    out += rep.field_label;
    out += ',';
    out += format_double(c.lhs);
    out += ',';
    out += format_double(c.rhs);
    out += ',';
    out += format_double(c.gap);
    out += ',';
    out += c.pass ? "true" : "false";
    out += ',';
    out += c.equality ? "true" : "false";
    out += ',';
    out += c.resolution;
    out += '\n';
  }
  return out;
}

}  // namespace uvf
