#pragma once

// Theorem-by-theorem verdicts. Each check compares a computed functional
// against its bound (or a two-path identity against itself) and records
// values, gap, tolerances, and pass/equality flags. Equality detection is
// only meaningful for one-sided bounds; identity and pointwise-floor rows
// always report equality = false.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "uvf/common.hpp"
#include "uvf/functionals.hpp"

namespace uvf {

enum class CheckKind { LowerBound, Identity, PointwiseFloor };

inline const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::LowerBound: return "lower-bound";
    case CheckKind::Identity: return "identity";
    case CheckKind::PointwiseFloor: return "pointwise-floor";
  }
  return "?";
}

struct BoundCheck {
  std::string id;
  CheckKind kind = CheckKind::LowerBound;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;      // lhs - rhs
  double rel_gap = 0.0;  // gap / max(1, |lhs|)
  bool pass = false;
  bool equality = false;
  double tol = 0.0;
  double eq_tol = 0.0;
  std::string resolution;
};

/// Pass tolerances: 1e-7 relative on spheres (closed-form comparisons),
/// 1e-4 relative elsewhere; equality always at 1e-6 relative. Pointwise
/// floors use the fixed 1e-9 slack of the node-level inequalities.
struct CheckTolerances {
  double class_rel = 1e-7;
  double eq_rel = 1e-6;
  double floor_abs = 1e-9;

  static CheckTolerances for_surface(const Hypersurface& s) {
    CheckTolerances t;
    t.class_rel = s.is_round_sphere ? 1e-7 : 1e-4;
    return t;
  }
};

namespace detail {

inline BoundCheck make_check(std::string id, CheckKind kind, double lhs, double rhs,
                             const CheckTolerances& tols, const std::string& resolution,
                             double tol_override = -1.0) {
  BoundCheck c;
  c.id = std::move(id);
  c.kind = kind;
  c.lhs = lhs;
  c.rhs = rhs;
  c.gap = lhs - rhs;
  c.rel_gap = c.gap / std::max(1.0, std::abs(lhs));
  c.resolution = resolution;
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  switch (kind) {
    case CheckKind::LowerBound:
      c.tol = tol_override >= 0 ? tol_override : tols.class_rel * scale;
      c.pass = lhs >= rhs - c.tol;
      c.eq_tol = tols.eq_rel * std::max(1.0, std::abs(lhs));
      c.equality = c.pass && std::abs(c.gap) <= c.eq_tol;  // equality implies pass
      break;
    case CheckKind::Identity:
      c.tol = tol_override >= 0 ? tol_override : tols.class_rel * scale;
      c.pass = std::abs(c.gap) <= c.tol;
      c.eq_tol = 0.0;
      c.equality = false;
      break;
    case CheckKind::PointwiseFloor:
      c.tol = tol_override >= 0 ? tol_override : tols.floor_abs;
      c.pass = lhs >= rhs - c.tol;
      c.eq_tol = 0.0;
      c.equality = false;
      break;
  }
  return c;
}

}  // namespace detail

/// E(v) >= C(n) |deg| vol(S^(2n+1)) / S^[2n-1] + (m/2) vol(M), with
/// C(n) = n/(2n-1) on round spheres and 1/2 otherwise.
inline BoundCheck check_energy_degree_bound(const Hypersurface& s, const FunctionalValues& fv,
                                            const SupConstants& sups, const DegreeEstimate& deg,
                                            const CheckTolerances& tols) {
  const int n = s.n;
  const double c_n = s.is_round_sphere ? static_cast<double>(n) / (2.0 * n - 1.0) : 0.5;
  const double s_bracket = sups.s_bracket[static_cast<std::size_t>(2 * n - 1 - 1)];
  if (!(s_bracket > 0.0)) throw InputError("energy bound: missing sup constants");
  double rhs = c_n * std::abs(deg.degree) * unit_sphere_volume(s.dim()) / s_bracket +
               0.5 * s.dim() * fv.vol_m;
  return detail::make_check("energy-degree-bound", CheckKind::LowerBound, fv.energy, rhs, tols,
                            fv.resolution);
}

/// Sphere-only closed form: E(v) >= ((2n+1)/2 r^(2n+1) + n/(2n-1) r^(2n-1))
/// vol(S^(2n+1)).
inline BoundCheck check_sphere_energy_bound(const Hypersurface& s, const FunctionalValues& fv,
                                            const CheckTolerances& tols) {
  if (!s.is_round_sphere) throw InputError("sphere energy bound: surface is not a round sphere");
  const int n = s.n;
  const double r = s.radius;
  double rhs = (0.5 * s.dim() * std::pow(r, s.dim()) +
                static_cast<double>(n) / (2.0 * n - 1.0) * std::pow(r, 2 * n - 1)) *
               unit_sphere_volume(s.dim());
  return detail::make_check("sphere-energy-bound", CheckKind::LowerBound, fv.energy, rhs, tols,
                            fv.resolution);
}

/// Reference infimum of the energy over smooth unit fields on the unit
/// sphere, n >= 2: ((2n+1)/2 + n/(2n-1)) vol(S^(2n+1)). Not attained, so
/// equality is never expected.
inline BoundCheck check_energy_infimum_reference(const Hypersurface& s, const FunctionalValues& fv,
                                                 const CheckTolerances& tols) {
  if (!(s.is_round_sphere && s.n >= 2 && std::abs(s.radius - 1.0) < 1e-12))
    throw InputError("energy infimum reference: unit sphere with n >= 2 required");
  double rhs = (0.5 * s.dim() + static_cast<double>(s.n) / (2.0 * s.n - 1.0)) *
               unit_sphere_volume(s.dim());
  return detail::make_check("energy-infimum-reference", CheckKind::LowerBound, fv.energy, rhs,
                            tols, fv.resolution);
}

/// B_n(v) >= binom(2n, n) int |sigma_2n|, checked pointwise: the reported
/// lhs is the worst node margin B_n-density - binom |sigma_2n|.
inline BoundCheck check_bending_sigma_floor(const FunctionalValues& fv, const CheckTolerances& tols) {
  return detail::make_check("bending-sigma-floor", CheckKind::PointwiseFloor,
                            fv.min_bending_margin, 0.0, tols, fv.resolution);
}

/// B_n(v) >= |deg| / S * binom(2n, n) vol(S^(2n+1)).
inline BoundCheck check_bending_degree_bound(const Hypersurface& s, const FunctionalValues& fv,
                                             const SupConstants& sups, const DegreeEstimate& deg,
                                             const CheckTolerances& tols) {
  if (!(sups.script_s > 0.0)) throw InputError("bending bound: missing sup constants");
  const int n = s.n;
  double rhs = std::abs(deg.degree) / sups.script_s * binomial(2 * n, n) *
               unit_sphere_volume(s.dim());
  return detail::make_check("bending-degree-bound", CheckKind::LowerBound,
                            fv.bending_k[static_cast<std::size_t>(n - 1)], rhs, tols, fv.resolution);
}

/// vol(v) - vol(M) >= vol(S^(2n+1)) / S * |deg|.
inline BoundCheck check_volume_degree_bound(const Hypersurface& s, const FunctionalValues& fv,
                                            const SupConstants& sups, const DegreeEstimate& deg,
                                            const CheckTolerances& tols) {
  if (!(sups.script_s > 0.0)) throw InputError("volume bound: missing sup constants");
  double rhs = unit_sphere_volume(s.dim()) / sups.script_s * std::abs(deg.degree);
  return detail::make_check("volume-degree-bound", CheckKind::LowerBound, fv.volume_v - fv.vol_m,
                            rhs, tols, fv.resolution);
}

/// |eta_2n| <= S (sqrt(det(I + a a^T)) - 1) at every node; lhs is the worst
/// node margin.
inline BoundCheck check_eta_top_floor(const FunctionalValues& fv, const CheckTolerances& tols) {
  if (!fv.has_eta_top_margin) throw InputError("eta-top floor: pass was run without sup constants");
  return detail::make_check("eta-top-floor", CheckKind::PointwiseFloor, fv.min_eta_top_margin, 0.0,
                            tols, fv.resolution);
}

/// int eta_k against deg * binom(n, k/2) vol(S^(2n+1)) (even k) or 0 (odd k),
/// one identity row per k.
inline std::vector<BoundCheck> check_degree_formula(const Hypersurface& s,
                                                    const FunctionalValues& fv,
                                                    const DegreeEstimate& deg,
                                                    const CheckTolerances& tols) {
  std::vector<BoundCheck> rows;
  for (int k = 0; k <= 2 * s.n; ++k) {
    double rhs = (k % 2 == 0) ? deg.degree * binomial(s.n, k / 2) * unit_sphere_volume(s.dim())
                              : 0.0;
    double scale = std::max({1.0, std::abs(rhs), fv.vol_m});
    rows.push_back(detail::make_check("eta-integral-k" + std::to_string(k), CheckKind::Identity,
                                      fv.eta[static_cast<std::size_t>(k)], rhs, tols, fv.resolution,
                                      tols.class_rel * scale));
  }
  return rows;
}

/// Agreement of the two eta_2 routes (coefficient extraction vs minor
/// expansion) to 1e-8 relative.
inline BoundCheck check_eta2_two_path(const FunctionalValues& fv, const CheckTolerances& tols) {
  double scale = std::max({1.0, std::abs(fv.eta[2]), std::abs(fv.eta2_minor)});
  return detail::make_check("eta2-two-path", CheckKind::Identity, fv.eta2_minor, fv.eta[2], tols,
                            fv.resolution, 1e-8 * scale);
}

/// Degree residual below 0.05 (grid resolved enough to trust the rounding).
inline BoundCheck check_degree_residual(const FunctionalValues& fv, const DegreeEstimate& deg,
                                        const CheckTolerances& tols) {
  return detail::make_check("degree-residual", CheckKind::Identity, deg.residual, 0.0, tols,
                            fv.resolution, 0.05);
}

// ---------------------------------------------------------------------------
// Convergence diagnostics
// ---------------------------------------------------------------------------

struct ConvergenceRow {
  std::string functional;
  std::vector<double> values;     // one per resolution, coarse to fine
  std::vector<double> rel_diffs;  // successive |v_{i+1}-v_i| / max(1,|v_{i+1}|)
  bool converged = true;
};

namespace detail {

inline ConvergenceRow convergence_row(std::string name, std::vector<double> values) {
  ConvergenceRow row;
  row.functional = std::move(name);
  row.values = std::move(values);
  for (std::size_t i = 1; i < row.values.size(); ++i) {
    double d = std::abs(row.values[i] - row.values[i - 1]) / std::max(1.0, std::abs(row.values[i]));
    row.rel_diffs.push_back(d);
  }
  // Non-convergence: successive differences that refuse to shrink (ratio
  // above 0.9 while still above the round-off floor), or a grossly unsettled
  // final difference.
  const double floor = 1e-12;
  for (std::size_t i = 1; i < row.rel_diffs.size(); ++i) {
    if (row.rel_diffs[i] > floor && row.rel_diffs[i - 1] > floor &&
        row.rel_diffs[i] / row.rel_diffs[i - 1] > 0.9)
      row.converged = false;
  }
  if (!row.rel_diffs.empty() && row.rel_diffs.back() > 0.05) row.converged = false;
  return row;
}

}  // namespace detail

/// One row per integral functional, evaluated at every resolution.
inline std::vector<ConvergenceRow> convergence_table(const std::vector<FunctionalValues>& per_res) {
  if (per_res.empty()) return {};
  const int m = per_res.front().m;
  auto collect = [&](auto&& get) {
    std::vector<double> v;
    for (const FunctionalValues& fv : per_res) v.push_back(get(fv));
    return v;
  };
  std::vector<ConvergenceRow> rows;
  rows.push_back(detail::convergence_row("vol", collect([](const FunctionalValues& f) { return f.vol_m; })));
  rows.push_back(detail::convergence_row("energy", collect([](const FunctionalValues& f) { return f.energy; })));
  rows.push_back(detail::convergence_row("total-bending", collect([](const FunctionalValues& f) { return f.total_bending; })));
  rows.push_back(detail::convergence_row("field-volume", collect([](const FunctionalValues& f) { return f.volume_v; })));
  for (int k = 1; k <= m; ++k)
    rows.push_back(detail::convergence_row("bending-" + std::to_string(k),
                                           collect([k](const FunctionalValues& f) { return f.bending_k[static_cast<std::size_t>(k - 1)]; })));
  for (int k = 0; k < m; ++k)
    rows.push_back(detail::convergence_row("eta-" + std::to_string(k),
                                           collect([k](const FunctionalValues& f) { return f.eta[static_cast<std::size_t>(k)]; })));
  return rows;
}

// ---------------------------------------------------------------------------
// Full verification run
// ---------------------------------------------------------------------------

struct SuiteSelection {
  bool energy = true;
  bool bending = true;
  bool volume = true;
  bool degree = true;

  static SuiteSelection parse(const std::string& name) {
    SuiteSelection s{false, false, false, false};
    if (name == "all") return SuiteSelection{true, true, true, true};
    if (name == "energy") s.energy = true;
    else if (name == "bending") s.bending = true;
    else if (name == "volume") s.volume = true;
    else if (name == "degree") s.degree = true;
    else throw InputError("unknown suite '" + name + "' (energy|bending|volume|degree|all)");
    return s;
  }
};

struct VerificationReport {
  std::string surface_label;
  std::string field_label;
  int n = 0, m = 0;
  std::optional<double> known_volume;  // closed form, when the catalog has one
  std::vector<std::string> resolutions;
  std::vector<FunctionalValues> per_resolution;  // coarse to fine; back() is primary
  SupConstants sups;
  DegreeEstimate degree;
  bool degree_warning = false;  // residual > 0.05
  std::vector<BoundCheck> checks;
  std::vector<ConvergenceRow> convergence;

  const FunctionalValues& primary() const { return per_resolution.back(); }

  bool all_pass() const {
    for (const BoundCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }
  bool all_converged() const {
    for (const ConvergenceRow& r : convergence)
      if (!r.converged) return false;
    return true;
  }
};

/// Runs the selected suites over the given resolutions (coarse to fine; the
/// finest is the headline one). Sup-constants come from a grid twice as
/// dense per axis as the finest resolution.
inline VerificationReport run_verification(const Hypersurface& surface, const UnitField& field,
                                           const std::vector<std::vector<int>>& resolutions,
                                           const SuiteSelection& suites, int threads = 0) {
  if (resolutions.empty()) throw InputError("run_verification: at least one resolution required");

  VerificationReport rep;
  rep.n = surface.n;
  rep.m = surface.dim();
  rep.known_volume = surface.known_volume;

  std::vector<int> sup_res = resolutions.back();
  for (int& r : sup_res) r *= 2;
  QuadratureGrid sup_grid = build_grid(surface, sup_res);
  rep.sups = sup_constants(surface, sup_grid, threads);

  EvaluateOptions opts;
  opts.threads = threads;
  opts.script_s = rep.sups.script_s;
  for (const std::vector<int>& res : resolutions) {
    QuadratureGrid grid = build_grid(surface, res);
    rep.resolutions.push_back(grid.resolution_label());
    rep.per_resolution.push_back(evaluate_functionals(surface, field, grid, opts));
  }
  rep.convergence = convergence_table(rep.per_resolution);

  const FunctionalValues& fv = rep.primary();
  rep.degree = degree_from_eta0(fv.eta[0], surface.dim());
  rep.degree_warning = rep.degree.residual > 0.05;

  CheckTolerances tols = CheckTolerances::for_surface(surface);
  if (suites.energy) {
    rep.checks.push_back(check_energy_degree_bound(surface, fv, rep.sups, rep.degree, tols));
    if (surface.is_round_sphere) {
      rep.checks.push_back(check_sphere_energy_bound(surface, fv, tols));
      if (surface.n >= 2 && std::abs(surface.radius - 1.0) < 1e-12)
        rep.checks.push_back(check_energy_infimum_reference(surface, fv, tols));
    }
  }
  if (suites.bending) {
    rep.checks.push_back(check_bending_sigma_floor(fv, tols));
    rep.checks.push_back(check_bending_degree_bound(surface, fv, rep.sups, rep.degree, tols));
  }
  if (suites.volume) {
    rep.checks.push_back(check_volume_degree_bound(surface, fv, rep.sups, rep.degree, tols));
    rep.checks.push_back(check_eta_top_floor(fv, tols));
  }
  if (suites.degree) {
    for (BoundCheck& c : check_degree_formula(surface, fv, rep.degree, tols))
      rep.checks.push_back(std::move(c));
    rep.checks.push_back(check_degree_residual(fv, rep.degree, tols));
    rep.checks.push_back(check_eta2_two_path(fv, tols));
  }
  return rep;
}

}  // namespace uvf
