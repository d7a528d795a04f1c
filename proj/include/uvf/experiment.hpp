#pragma once

// Experiment orchestration behind the CLI: configuration, catalog lookup,
// default resolutions, suite runs, and report files. Identical
// configurations (including the seed) produce byte-identical outputs
// regardless of thread count.

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uvf/fields.hpp"
#include "uvf/report.hpp"
#include "uvf/surfaces.hpp"
#include "uvf/verify.hpp"

namespace uvf {

struct SurfaceConfig {
  std::string name;  // sphere | ellipsoid | tube-torus
  int n = 1;
  double radius = 1.0;
  std::array<double, 4> semi_axes = {1.0, 1.2, 1.4, 1.7};
  double big_r = 3.0;
  double rho = 1.0;
};

struct FieldConfig {
  std::string name;  // hopf | circle | jproj | perturbed
  double amplitude = 0.1;
};

struct ExperimentConfig {
  SurfaceConfig surface;
  FieldConfig field;
  std::vector<std::string> resolutions;  // "48,48,64" or "32"; empty = defaults
  std::string suite = "all";
  std::string out_json = "report.json";
  std::string out_csv = "report.csv";
  std::uint64_t seed = 1;
  int threads = 0;
};

inline Hypersurface make_surface(const SurfaceConfig& cfg) {
  if (cfg.name == "sphere") {
    if (cfg.n != 1 && cfg.n != 2) throw InputError("sphere: --n must be 1 or 2");
    return make_sphere(cfg.n, cfg.radius);
  }
  if (cfg.name == "ellipsoid") return make_ellipsoid(cfg.semi_axes);
  if (cfg.name == "tube-torus") return make_tube_torus(cfg.big_r, cfg.rho);
  throw InputError("unknown surface '" + cfg.name + "' (sphere|ellipsoid|tube-torus)");
}

/// The surface's canonical field, used directly and as the perturbation base.
inline UnitField default_field(const Hypersurface& surface) {
  if (surface.is_round_sphere) return hopf_field(surface);
  if (surface.name == "ellipsoid") return jproj_field(surface);
  if (surface.name == "tube-torus") return circle_field(surface);
  throw InputError("no default field for surface '" + surface.name + "'");
}

inline UnitField make_field(const Hypersurface& surface, const FieldConfig& cfg, std::uint64_t seed) {
  if (cfg.name == "hopf") return hopf_field(surface);
  if (cfg.name == "circle") return circle_field(surface);
  if (cfg.name == "jproj") return jproj_field(surface);
  if (cfg.name == "perturbed") return perturbed_field(surface, default_field(surface), cfg.amplitude, seed);
  throw InputError("unknown field '" + cfg.name + "' (hopf|circle|jproj|perturbed)");
}

/// Two-entry ladder (coarse, fine) so every run carries a convergence table.
inline std::vector<std::vector<int>> default_resolutions(const Hypersurface& surface) {
  if (surface.is_round_sphere && surface.n == 2) return {{8, 8, 8, 12, 12}, {12, 12, 12, 16, 16}};
  if (surface.is_round_sphere) return {{24, 24, 32}, {48, 48, 64}};
  if (surface.name == "ellipsoid") return {{16, 16, 24}, {32, 32, 48}};
  return {{24, 12, 16}, {48, 24, 32}};  // tube torus (theta, alpha, beta)
}

/// "48,48,64" -> per-axis counts; a single integer is replicated to all axes.
inline std::vector<int> parse_resolution(const std::string& text, int axes) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw InputError("bad resolution '" + text + "'");
    }
    if (pos != tok.size()) throw InputError("bad resolution '" + text + "'");
    out.push_back(v);
  }
  if (out.size() == 1) out.assign(static_cast<std::size_t>(axes), out[0]);
  if (static_cast<int>(out.size()) != axes)
    throw InputError("resolution '" + text + "' must list 1 or " + std::to_string(axes) + " counts");
  for (int v : out)
    if (v < 4) throw InputError("resolution must be >= 4 per axis");
  return out;
}

inline std::string surface_label(const SurfaceConfig& cfg) {
  char buf[128];
  if (cfg.name == "sphere") {
    std::snprintf(buf, sizeof buf, "sphere(n=%d;r=%g)", cfg.n, cfg.radius);
  } else if (cfg.name == "ellipsoid") {
    std::snprintf(buf, sizeof buf, "ellipsoid(%g;%g;%g;%g)", cfg.semi_axes[0], cfg.semi_axes[1],
                  cfg.semi_axes[2], cfg.semi_axes[3]);
  } else {
    std::snprintf(buf, sizeof buf, "tube-torus(R=%g;rho=%g)", cfg.big_r, cfg.rho);
  }
  return buf;
}

inline std::string field_label(const FieldConfig& cfg, std::uint64_t seed) {
  if (cfg.name == "perturbed") {
    char buf[96];
    std::snprintf(buf, sizeof buf, "perturbed(amp=%g;seed=%llu)", cfg.amplitude,
                  static_cast<unsigned long long>(seed));
    return buf;
  }
  return cfg.name;
}

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 failed checks, 3 non-convergence
  VerificationReport report;
};

/// Executes the configured suites and writes the JSON and CSV reports.
inline RunResult run_experiment(const ExperimentConfig& cfg) {
  Hypersurface surface = make_surface(cfg.surface);
  UnitField field = make_field(surface, cfg.field, cfg.seed);
  SuiteSelection suites = SuiteSelection::parse(cfg.suite);

  std::vector<std::vector<int>> resolutions;
  if (cfg.resolutions.empty()) {
    resolutions = default_resolutions(surface);
  } else {
    for (const std::string& r : cfg.resolutions) resolutions.push_back(parse_resolution(r, surface.dim()));
  }

  RunResult result;
  result.report = run_verification(surface, field, resolutions, suites, cfg.threads);
  result.report.surface_label = surface_label(cfg.surface);
  result.report.field_label = field_label(cfg.field, cfg.seed);

  if (!cfg.out_json.empty()) {
    std::ofstream os(cfg.out_json);
    if (!os) throw InputError("cannot open '" + cfg.out_json + "' for writing");
    os << report_to_json(result.report).dump(2) << "\n";
  }
  if (!cfg.out_csv.empty()) {
    std::ofstream os(cfg.out_csv);
    if (!os) throw InputError("cannot open '" + cfg.out_csv + "' for writing");
    os << report_to_csv(result.report);
  }

  if (!result.report.all_converged())
    result.exit_code = 3;
  else if (!result.report.all_pass())
    result.exit_code = 1;
  return result;
}

/// Human-readable catalog of surfaces and fields with their parameters.
inline std::string catalog_text() {
  return
      "surfaces:\n"
      "  sphere       round sphere S^(2n+1)(r); params: n in {1,2}, radius > 0; normal degree 1\n"
      "  ellipsoid    sum x_i^2/a_i^2 = 1 in R^4; params: semi-axes a1,a2,a3,a4; normal degree 1\n"
      "  tube-torus   distance-rho tube around a circle of radius R in R^4 (S^1 x S^2);\n"
      "               params: R > rho > 0; normal degree 0\n"
      "fields:\n"
      "  hopf         J x / |x|, fibers of the circle fibration; spheres only\n"
      "  circle       unit direction of the core circle; tube-torus only\n"
      "  jproj        normalized tangential projection of J x; spheres and ellipsoid\n"
      "  perturbed    normalize(base + amplitude * P w), seeded direction w, amplitude in [0,1);\n"
      "               base = hopf (sphere), jproj (ellipsoid), circle (tube-torus)\n";
}

inline nlohmann::ordered_json catalog_json() {
  using json = nlohmann::ordered_json;
  json surfaces = json::array();
  surfaces.push_back({{"name", "sphere"},
                      {"params", {{"n", "1|2"}, {"radius", ">0"}}},
                      {"expected_degree", 1}});
  surfaces.push_back({{"name", "ellipsoid"},
                      {"params", {{"semi_axes", "a1,a2,a3,a4 (>0)"}}},
                      {"expected_degree", 1}});
  surfaces.push_back({{"name", "tube-torus"},
                      {"params", {{"R", ">rho"}, {"rho", ">0"}}},
                      {"expected_degree", 0}});
  json fields = json::array();
  fields.push_back({{"name", "hopf"}, {"surfaces", {"sphere"}}});
  fields.push_back({{"name", "circle"}, {"surfaces", {"tube-torus"}}});
  fields.push_back({{"name", "jproj"}, {"surfaces", {"sphere", "ellipsoid"}}});
  fields.push_back({{"name", "perturbed"},
                    {"surfaces", {"sphere", "ellipsoid", "tube-torus"}},
                    {"params", {{"amplitude", "[0,1)"}, {"seed", "uint64"}}}});
  json j;
  j["surfaces"] = surfaces;
  j["fields"] = fields;
  return j;
}

}  // namespace uvf
