// Command-line front end: configure an experiment (flags and/or a JSON
// config file, flags winning), run the selected verification suites, and
// write the JSON/CSV reports.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration,
// 3 numerical failure (non-convergence flag).

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uvf/experiment.hpp"

namespace {

void load_config_file(const std::string& path, uvf::ExperimentConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw uvf::InputError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw uvf::InputError("config file '" + path + "': " + e.what());
  }
  if (j.contains("surface")) cfg.surface.name = j["surface"].get<std::string>();
  if (j.contains("n")) cfg.surface.n = j["n"].get<int>();
  if (j.contains("radius")) cfg.surface.radius = j["radius"].get<double>();
  if (j.contains("semi_axes")) {
    auto v = j["semi_axes"].get<std::vector<double>>();
    if (v.size() != 4) throw uvf::InputError("config: semi_axes must list 4 values");
    for (int i = 0; i < 4; ++i) cfg.surface.semi_axes[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
  }
  if (j.contains("R")) cfg.surface.big_r = j["R"].get<double>();
  if (j.contains("rho")) cfg.surface.rho = j["rho"].get<double>();
  if (j.contains("field")) cfg.field.name = j["field"].get<std::string>();
  if (j.contains("amplitude")) cfg.field.amplitude = j["amplitude"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("resolution")) cfg.resolutions = j["resolution"].get<std::vector<std::string>>();
  if (j.contains("suite")) cfg.suite = j["suite"].get<std::string>();
  if (j.contains("out_json")) cfg.out_json = j["out_json"].get<std::string>();
  if (j.contains("out_csv")) cfg.out_csv = j["out_csv"].get<std::string>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verify - functionals of unit vector fields on closed hypersurfaces"};

  bool list_catalog = false;
  bool machine = false;
  std::string config_path;
  std::string surface_name, field_name;
  int n = 1;
  double radius = 1.0;
  std::string semi_axes_text;
  double big_r = 3.0, rho = 1.0;
  double amplitude = 0.1;
  std::uint64_t seed = 1;
  std::vector<std::string> resolutions;
  std::string suite = "all";
  std::string out_json = "report.json", out_csv = "report.csv";
  int threads = 0;

  app.add_flag("--list-catalog", list_catalog, "List surfaces and fields, then exit");
  app.add_flag("--machine", machine, "Machine-readable (JSON) catalog listing");
  app.add_option("--config", config_path, "JSON config file; explicit flags override its values");
  app.add_option("--surface", surface_name, "Surface name: sphere | ellipsoid | tube-torus");
  app.add_option("--n", n, "Sphere parameter n (dimension 2n+1); 1 or 2");
  app.add_option("--radius", radius, "Sphere radius");
  app.add_option("--semi-axes", semi_axes_text, "Ellipsoid semi-axes, e.g. 1,1.2,1.4,1.7");
  app.add_option("--R", big_r, "Tube torus core-circle radius");
  app.add_option("--rho", rho, "Tube torus tube radius");
  app.add_option("--field", field_name, "Field name: hopf | circle | jproj | perturbed");
  app.add_option("--amplitude", amplitude, "Perturbation amplitude in [0,1)");
  app.add_option("--seed", seed, "Seed for the perturbation direction");
  app.add_option("--resolution", resolutions,
                 "Per-axis node counts, e.g. 48,48,64 (repeatable; last entry is the headline "
                 "resolution; a single integer applies to all axes)")
      ->take_all();
  app.add_option("--suite", suite, "energy | bending | volume | degree | all");
  app.add_option("--out-json", out_json, "JSON report path (empty to skip)");
  app.add_option("--out-csv", out_csv, "CSV summary path (empty to skip)");
  app.add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on this");

  if (argc <= 1) {
    std::cout << app.help() << std::endl;
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help() << std::endl;
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }

  if (list_catalog) {
    if (machine)
      std::cout << uvf::catalog_json().dump(2) << std::endl;
    else
      std::cout << uvf::catalog_text();
    return 0;
  }

  try {
    uvf::ExperimentConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);

    if (app.count("--surface")) cfg.surface.name = surface_name;
    if (app.count("--n")) cfg.surface.n = n;
    if (app.count("--radius")) cfg.surface.radius = radius;
    if (app.count("--semi-axes")) {
      std::vector<double> ax;
      std::stringstream ss(semi_axes_text);
      std::string tok;
      while (std::getline(ss, tok, ',')) ax.push_back(std::stod(tok));
      if (ax.size() != 4) throw uvf::InputError("--semi-axes must list 4 values");
      for (int i = 0; i < 4; ++i) cfg.surface.semi_axes[static_cast<std::size_t>(i)] = ax[static_cast<std::size_t>(i)];
    }
    if (app.count("--R")) cfg.surface.big_r = big_r;
    if (app.count("--rho")) cfg.surface.rho = rho;
    if (app.count("--field")) cfg.field.name = field_name;
    if (app.count("--amplitude")) cfg.field.amplitude = amplitude;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--resolution")) cfg.resolutions = resolutions;
    if (app.count("--suite")) cfg.suite = suite;
    if (app.count("--out-json")) cfg.out_json = out_json;
    if (app.count("--out-csv")) cfg.out_csv = out_csv;
    if (app.count("--threads")) cfg.threads = threads;

    if (cfg.surface.name.empty()) throw uvf::InputError("--surface is required (or provide a config file)");
    if (cfg.field.name.empty()) throw uvf::InputError("--field is required (or provide a config file)");

    uvf::RunResult result = uvf::run_experiment(cfg);
    const uvf::VerificationReport& rep = result.report;

    std::printf("%s / %s  (m = %d, primary resolution %s)\n", rep.surface_label.c_str(),
                rep.field_label.c_str(), rep.m, rep.resolutions.back().c_str());
    std::printf("degree %d (raw %.6f, residual %.2e)%s\n", rep.degree.degree, rep.degree.raw,
                rep.degree.residual, rep.degree_warning ? "  [WARNING: residual > 0.05]" : "");
    for (const uvf::BoundCheck& c : rep.checks) {
      std::printf("%-26s %s%s  lhs=%.12g rhs=%.12g gap=%.3e\n", c.id.c_str(),
                  c.pass ? "pass" : "FAIL", c.equality ? " (equality)" : "", c.lhs, c.rhs, c.gap);
    }
    if (!rep.all_converged()) std::printf("non-convergence flagged; see the report table\n");
    return result.exit_code;
  } catch (const uvf::InputError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const uvf::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
