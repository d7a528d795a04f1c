#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>

#include "uvf/experiment.hpp"
#include "uvf/verify.hpp"

using namespace uvf;

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi3 = kPi * kPi * kPi;

std::set<std::string> equality_ids(const VerificationReport& rep) {
  std::set<std::string> ids;
  for (const BoundCheck& c : rep.checks)
    if (c.equality) ids.insert(c.id);
  return ids;
}

void require_all_pass(const VerificationReport& rep) {
  for (const BoundCheck& c : rep.checks) {
    INFO(c.id << ": lhs=" << c.lhs << " rhs=" << c.rhs << " tol=" << c.tol);
    REQUIRE(c.pass);
  }
}

void require_unique_ids(const VerificationReport& rep) {
  std::set<std::string> seen;
  for (const BoundCheck& c : rep.checks) {
    INFO("duplicate check id " << c.id);
    REQUIRE(seen.insert(c.id).second);
  }
}

}  // namespace

TEST_CASE("S^3(1) Hopf: all checks pass with the four expected equalities") {
  Hypersurface s = make_sphere(1, 1.0);
  UnitField f = hopf_field(s);
  VerificationReport rep =
      run_verification(s, f, {{12, 12, 16}, {24, 24, 32}}, SuiteSelection::parse("all"));
  require_all_pass(rep);
  require_unique_ids(rep);
  CHECK(rep.all_converged());
  CHECK(rep.degree.degree == 1);
  CHECK(rep.degree.residual < 1e-8);
  std::set<std::string> expect = {"energy-degree-bound", "sphere-energy-bound",
                                  "bending-degree-bound", "volume-degree-bound"};
  CHECK(equality_ids(rep) == expect);
}

TEST_CASE("S^3(2) Hopf: equalities persist under scaling") {
  Hypersurface s = make_sphere(1, 2.0);
  UnitField f = hopf_field(s);
  VerificationReport rep =
      run_verification(s, f, {{12, 12, 16}, {24, 24, 32}}, SuiteSelection::parse("all"));
  require_all_pass(rep);
  std::set<std::string> expect = {"energy-degree-bound", "sphere-energy-bound",
                                  "bending-degree-bound", "volume-degree-bound"};
  CHECK(equality_ids(rep) == expect);
}

TEST_CASE("S^5(1) Hopf: only the bending bound is attained") {
  Hypersurface s = make_sphere(2, 1.0);
  UnitField f = hopf_field(s);
  // The primary grid must be fine enough for the 1e-7 sphere-class
  // tolerance; GL-8 per axis leaves ~1e-6 quadrature error on S^5.
  VerificationReport rep =
      run_verification(s, f, {{6, 6, 6, 8, 8}, {12, 12, 12, 16, 16}}, SuiteSelection::parse("all"));
  require_all_pass(rep);
  require_unique_ids(rep);
  CHECK(equality_ids(rep) == std::set<std::string>{"bending-degree-bound"});

  // the energy sits a gap of 4/3 pi^3 above the reference infimum
  for (const BoundCheck& c : rep.checks) {
    if (c.id == "energy-infimum-reference") {
      CHECK_THAT(c.rhs, Catch::Matchers::WithinRel((2.5 + 2.0 / 3.0) * kPi3, 1e-12));
      CHECK_THAT(c.gap, Catch::Matchers::WithinRel(4.0 / 3.0 * kPi3, 1e-5));
    }
  }
}

TEST_CASE("tube torus circle field: degree zero, bounds trivial, no equalities") {
  Hypersurface s = make_tube_torus(3.0, 1.0);
  UnitField f = circle_field(s);
  VerificationReport rep =
      run_verification(s, f, {{12, 8, 12}, {24, 12, 16}}, SuiteSelection::parse("all"));
  require_all_pass(rep);
  CHECK(rep.degree.degree == 0);
  CHECK(rep.degree.residual < 0.05);
  CHECK(equality_ids(rep).empty());
  for (const BoundCheck& c : rep.checks) {
    if (c.id == "bending-degree-bound" || c.id == "volume-degree-bound") CHECK(c.rhs == 0.0);
  }
}

TEST_CASE("ellipsoid jproj field: degree one, all bounds strict") {
  Hypersurface s = make_ellipsoid({1.0, 1.2, 1.4, 1.7});
  UnitField f = jproj_field(s);
  VerificationReport rep =
      run_verification(s, f, {{12, 12, 16}, {24, 24, 32}}, SuiteSelection::parse("all"));
  require_all_pass(rep);
  CHECK(rep.degree.degree == 1);
  CHECK(rep.degree.residual < 0.05);
  CHECK(equality_ids(rep).empty());
}

TEST_CASE("perturbed Hopf fields never report equality") {
  Hypersurface s = make_sphere(1, 1.0);
  for (double amp : {0.05, 0.1}) {
    UnitField f = perturbed_field(s, hopf_field(s), amp, 1);
    VerificationReport rep =
        run_verification(s, f, {{12, 12, 16}, {24, 24, 32}}, SuiteSelection::parse("all"));
    require_all_pass(rep);
    CHECK(equality_ids(rep).empty());
  }
}

TEST_CASE("suite selection limits the emitted checks") {
  Hypersurface s = make_sphere(1, 1.0);
  UnitField f = hopf_field(s);
  VerificationReport rep =
      run_verification(s, f, {{8, 8, 8}, {12, 12, 16}}, SuiteSelection::parse("degree"));
  require_all_pass(rep);
  std::set<std::string> ids;
  for (const BoundCheck& c : rep.checks) ids.insert(c.id);
  std::set<std::string> expect = {"eta-integral-k0", "eta-integral-k1", "eta-integral-k2",
                                  "degree-residual", "eta2-two-path"};
  CHECK(ids == expect);
  CHECK_THROWS_AS(SuiteSelection::parse("everything"), InputError);
}

TEST_CASE("equality implies pass on every generated check") {
  Hypersurface s = make_sphere(1, 1.0);
  UnitField f = hopf_field(s);
  VerificationReport rep =
      run_verification(s, f, {{8, 8, 8}, {12, 12, 16}}, SuiteSelection::parse("all"));
  for (const BoundCheck& c : rep.checks)
    if (c.equality) CHECK(c.pass);
}

TEST_CASE("convergence table flags a synthetic stall") {
  // Three fake resolutions whose successive differences do not shrink.
  FunctionalValues a, b, c;
  a.m = b.m = c.m = 3;
  a.energy = 1.0;
  b.energy = 1.1;
  c.energy = 1.2;
  a.resolution = "4x4x4";
  b.resolution = "8x8x8";
  c.resolution = "16x16x16";
  auto rows = convergence_table({a, b, c});
  bool found = false;
  for (const ConvergenceRow& r : rows)
    if (r.functional == "energy") {
      found = true;
      CHECK_FALSE(r.converged);
    }
  CHECK(found);
}

TEST_CASE("run_experiment writes reports and returns exit code zero") {
  ExperimentConfig cfg;
  cfg.surface.name = "sphere";
  cfg.surface.n = 1;
  cfg.surface.radius = 1.0;
  cfg.field.name = "hopf";
  cfg.resolutions = {"8,8,8", "12,12,16"};
  cfg.suite = "degree";
  cfg.out_json = "verify_test_report.json";
  cfg.out_csv = "verify_test_report.csv";
  RunResult res = run_experiment(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report.all_pass());

  std::ifstream csv(cfg.out_csv);
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "theorem,surface,field,lhs,rhs,gap,pass,equality,resolution");

  std::remove(cfg.out_json.c_str());
  std::remove(cfg.out_csv.c_str());

  ExperimentConfig bad = cfg;
  bad.surface.name = "klein-bottle";
  CHECK_THROWS_AS(run_experiment(bad), InputError);
  bad = cfg;
  bad.resolutions = {"2,2,2"};
  CHECK_THROWS_AS(run_experiment(bad), InputError);
}
