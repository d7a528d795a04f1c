// Acceptance suite: runs every end-to-end criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status 0 iff everything
// passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uvf/experiment.hpp"

using namespace uvf;

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;
const double kPi3 = kPi * kPi * kPi;

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.empty() ? "" : " -- ",
              detail.c_str());
  if (!ok) ++g_failures;
}

bool within_rel(double value, double expect, double tol) {
  return std::abs(value - expect) <= tol * std::abs(expect);
}

std::string num_pair(double value, double expect) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "value %.12g vs %.12g", value, expect);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const BoundCheck* find_check(const VerificationReport& rep, const std::string& id) {
  for (const BoundCheck& c : rep.checks)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

int main() {
  // Shared runs reused across criteria.
  Hypersurface s3 = make_sphere(1, 1.0);
  UnitField hopf3 = hopf_field(s3);
  Hypersurface s5 = make_sphere(2, 1.0);
  UnitField hopf5 = hopf_field(s5);
  Hypersurface torus = make_tube_torus(3.0, 1.0);
  UnitField circle = circle_field(torus);
  Hypersurface ell = make_ellipsoid({1.0, 1.2, 1.4, 1.7});
  UnitField jp = jproj_field(ell);

  // ---- criterion 1: degree formula ----------------------------------------
  {
    auto t0 = std::chrono::steady_clock::now();
    QuadratureGrid g = build_grid(s3, {48, 48, 64});
    EvaluateOptions single;
    single.threads = 1;
    FunctionalValues fv = evaluate_functionals(s3, hopf3, g, single);
    double elapsed = seconds_since(t0);
    report("1a S3(1) Hopf (48,48,64): int eta_0 = 2 pi^2 within 1e-6 rel",
           within_rel(fv.eta[0], 2.0 * kPi2, 1e-6), num_pair(fv.eta[0], 2.0 * kPi2));
    report("1b S3(1) Hopf: int eta_2 = 2 pi^2 within 1e-6 rel",
           within_rel(fv.eta[2], 2.0 * kPi2, 1e-6), num_pair(fv.eta[2], 2.0 * kPi2));
    report("1c S3(1) Hopf: |int eta_1| <= 1e-6 vol", std::abs(fv.eta[1]) <= 1e-6 * fv.vol_m);
    {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.1f s single-core", elapsed);
      report("1d S3 degree pass within the 2 min single-core budget", elapsed <= 120.0, buf);
    }
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    QuadratureGrid g = build_grid(s5, {12, 12, 12, 16, 16});
    FunctionalValues fv = evaluate_functionals(s5, hopf5, g);
    double elapsed = seconds_since(t0);
    report("1e S5(1) Hopf: int eta_2 = 2 pi^3 within 1e-5 rel",
           within_rel(fv.eta[2], 2.0 * kPi3, 1e-5), num_pair(fv.eta[2], 2.0 * kPi3));
    report("1f S5(1) Hopf: int eta_4 = pi^3 within 1e-5 rel",
           within_rel(fv.eta[4], kPi3, 1e-5), num_pair(fv.eta[4], kPi3));
    {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.1f s", elapsed);
      report("1g S5 degree pass within the 20 min budget", elapsed <= 1200.0, buf);
    }
  }

  // ---- criterion 2: Hopf energy equality on S^3(r) -------------------------
  for (double r : {0.5, 1.0, 2.0}) {
    Hypersurface s = make_sphere(1, r);
    double e = energy(s, hopf_field(s), build_grid(s, {48, 48, 64}));
    double expect = (1.5 * r * r * r + r) * 2.0 * kPi2;
    char name[96];
    std::snprintf(name, sizeof name, "2 E(Hopf on S3(%.1f)) = ((3/2)r^3 + r) 2 pi^2 within 1e-7 rel", r);
    report(name, within_rel(e, expect, 1e-7), num_pair(e, expect));
  }

  // Full verification reports reused by several criteria.
  VerificationReport rep3 = run_verification(s3, hopf3, {{24, 24, 32}, {48, 48, 64}},
                                             SuiteSelection::parse("all"));
  rep3.surface_label = "sphere(n=1;r=1)";
  rep3.field_label = "hopf";
  VerificationReport rep5 = run_verification(s5, hopf5, {{8, 8, 8, 12, 12}, {12, 12, 12, 16, 16}},
                                             SuiteSelection::parse("all"));
  rep5.surface_label = "sphere(n=2;r=1)";
  rep5.field_label = "hopf";

  // ---- criterion 3: infimum reference on S^5 --------------------------------
  {
    double e = rep5.primary().energy;
    double inf = (2.5 + 2.0 / 3.0) * kPi3;
    report("3a S5(1) Hopf: E = 4.5 pi^3 within 1e-6 rel", within_rel(e, 4.5 * kPi3, 1e-6),
           num_pair(e, 4.5 * kPi3));
    report("3b S5(1): E(Hopf) - infimum = (4/3) pi^3 within 1e-6 rel",
           within_rel(e - inf, 4.0 / 3.0 * kPi3, 1e-6), num_pair(e - inf, 4.0 / 3.0 * kPi3));
    report("3c S5(1): E(Hopf) exceeds the infimum", e > inf);
  }

  // ---- criterion 4: bending equalities --------------------------------------
  {
    double b1 = rep3.primary().bending_k[0];
    report("4a B_1(Hopf on S3) = 4 pi^2 within 1e-6 rel", within_rel(b1, 4.0 * kPi2, 1e-6),
           num_pair(b1, 4.0 * kPi2));
    double b2 = rep5.primary().bending_k[1];
    report("4b B_2(Hopf on S5) = 6 pi^3 within 1e-6 rel", within_rel(b2, 6.0 * kPi3, 1e-6),
           num_pair(b2, 6.0 * kPi3));
    const BoundCheck* c3 = find_check(rep3, "bending-degree-bound");
    const BoundCheck* c5 = find_check(rep5, "bending-degree-bound");
    report("4c bending degree bound reports equality on S3 and S5",
           c3 && c3->equality && c5 && c5->equality);
  }

  // ---- criterion 5: volume equality on S^3 ----------------------------------
  {
    const FunctionalValues& fv = rep3.primary();
    double excess = fv.volume_v - fv.vol_m;
    report("5a vol(Hopf on S3) - vol(S3) = 2 pi^2 within 1e-7 rel",
           within_rel(excess, 2.0 * kPi2, 1e-7), num_pair(excess, 2.0 * kPi2));
    const BoundCheck* c = find_check(rep3, "volume-degree-bound");
    report("5b volume degree bound reports equality", c && c->equality);
  }

  // ---- criterion 6: degree-zero surface -------------------------------------
  VerificationReport rept = run_verification(torus, circle, {{24, 12, 16}, {48, 24, 32}},
                                             SuiteSelection::parse("all"));
  rept.surface_label = "tube-torus(R=3;rho=1)";
  rept.field_label = "circle";
  {
    const FunctionalValues& fv = rept.primary();
    bool all_small = true;
    for (int k = 0; k <= fv.m; ++k)
      all_small = all_small && std::abs(fv.eta[static_cast<std::size_t>(k)]) <= 1e-3 * fv.vol_m;
    report("6a tube torus: |int eta_k| <= 1e-3 vol for every k", all_small);
    report("6b tube torus: degree estimate 0 with residual < 0.05",
           rept.degree.degree == 0 && rept.degree.residual < 0.05);
  }

  // ---- criterion 7: two-path eta_2 consistency over the catalog --------------
  {
    struct Pair {
      const char* name;
      double via_coeffs, via_minors;
    };
    std::vector<Pair> pairs;
    auto add = [&pairs](const char* name, const FunctionalValues& fv) {
      pairs.push_back({name, fv.eta[2], fv.eta2_minor});
    };
    add("S3+hopf", rep3.primary());
    add("S5+hopf", rep5.primary());
    add("torus+circle", rept.primary());
    add("ellipsoid+jproj",
        evaluate_functionals(ell, jp, build_grid(ell, {16, 16, 24})));
    add("S3+jproj",
        evaluate_functionals(s3, jproj_field(s3), build_grid(s3, {16, 16, 24})));
    add("S3+perturbed",
        evaluate_functionals(s3, perturbed_field(s3, hopf3, 0.1, 1), build_grid(s3, {16, 16, 24})));
    add("S5+perturbed",
        evaluate_functionals(s5, perturbed_field(s5, hopf5, 0.1, 1), build_grid(s5, {6, 6, 6, 8, 8})));
    add("ellipsoid+perturbed",
        evaluate_functionals(ell, perturbed_field(ell, jp, 0.1, 1), build_grid(ell, {16, 16, 24})));
    add("torus+perturbed",
        evaluate_functionals(torus, perturbed_field(torus, circle, 0.1, 1), build_grid(torus, {16, 8, 12})));
    bool ok = true;
    std::string worst;
    for (const Pair& p : pairs) {
      double scale = std::max(1.0, std::abs(p.via_coeffs));
      if (std::abs(p.via_minors - p.via_coeffs) > 1e-8 * scale) {
        ok = false;
        worst = p.name;
      }
    }
    report("7 eta2 minor expansion matches coefficient extraction to 1e-8 on every pair", ok, worst);
  }

  // ---- criterion 8: property suites ------------------------------------------
  {
    // (a) frame invariance of the eta coefficients under 200 random rotations
    SplitMix64 rng(2718);
    double max_dev = 0.0;
    struct Case {
      const Hypersurface* s;
      const UnitField* f;
    };
    UnitField jp3 = jproj_field(s3);
    Case cases[] = {{&s3, &hopf3}, {&s5, &hopf5}, {&torus, &circle}, {&ell, &jp}};
    for (const Case& c : cases) {
      for (int trial = 0; trial < 200; ++trial) {
        TangentPoint pt = eval_point(*c.s, 0, test::random_params(rng, c.s->atlas[0]));
        PointFrame pf = point_frame(*c.s, *c.f, pt);
        CoefficientVector base = det_poly_coeffs(pf.h, pf.a);
        const int m = pf.m;
        SquareMatrix q = test::random_orthogonal(rng, m - 1);
        PointFrame rot = pf;
        for (int i = 0; i < m - 1; ++i) {
          Vec e(pt.position.dim());
          for (int j = 0; j < m - 1; ++j) axpy(q(j, i), pf.frame[static_cast<std::size_t>(j)], e);
          rot.frame[static_cast<std::size_t>(i)] = e;
        }
        ShapeOperator op(*c.s, pt);
        rot.h = op.matrix_in_frame(rot.frame.data(), m);
        rot.a = covariant_matrix(*c.f, rot);
        CoefficientVector got = det_poly_coeffs(rot.h, rot.a);
        for (int k = 0; k <= m; ++k) max_dev = std::max(max_dev, std::abs(got[k] - base[k]));
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.3e", max_dev);
    report("8a eta_k frame invariance over 200 random rotations per surface", max_dev <= 1e-9, buf);
  }
  {
    // (b) pointwise |eta_2n| <= S (sqrt(det(I + a a^T)) - 1) at every node
    bool ok = rep3.primary().min_eta_top_margin >= -1e-9 &&
              rep5.primary().min_eta_top_margin >= -1e-9 &&
              rept.primary().min_eta_top_margin >= -1e-9;
    VerificationReport repe = run_verification(ell, jp, {{12, 12, 16}, {24, 24, 32}},
                                               SuiteSelection::parse("all"));
    repe.surface_label = "ellipsoid(1;1.2;1.4;1.7)";
    repe.field_label = "jproj";
    ok = ok && repe.primary().min_eta_top_margin >= -1e-9;
    report("8b pointwise eta_2n bound holds at every node of every catalog run", ok);

    // every catalog bound check passes, and the equality pattern is exact
    bool all_pass = rep3.all_pass() && rep5.all_pass() && rept.all_pass() && repe.all_pass();
    report("8b' every bound check passes on the whole catalog", all_pass);

    auto ids = [](const VerificationReport& r) {
      std::set<std::string> s;
      for (const BoundCheck& c : r.checks)
        if (c.equality) s.insert(c.id);
      return s;
    };
    std::set<std::string> expect3 = {"energy-degree-bound", "sphere-energy-bound",
                                     "bending-degree-bound", "volume-degree-bound"};
    bool pattern = ids(rep3) == expect3 &&
                   ids(rep5) == std::set<std::string>{"bending-degree-bound"} &&
                   ids(rept).empty() && ids(repe).empty();
    report("8b'' equality flags fire exactly on the Hopf-sphere cases", pattern);
  }
  {
    // (c) minor-sum inequality on random matrices
    SplitMix64 rng(9001);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      for (int d : {2, 4}) {
        auto [lhs, rhs] = minor_inequality_check(test::random_matrix(rng, d, -2.0, 2.0));
        if (lhs < rhs - 1e-12 * std::max(1.0, rhs)) ok = false;
      }
    }
    report("8c minor-sum inequality on 1000 random 2x2 and 4x4 matrices", ok);
  }
  {
    // (d) phi_t determinant identity at 100 random (point, t) samples
    SplitMix64 rng(31415);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      double t = rng.uniform(-2.0, 2.0);
      const Hypersurface* s;
      const UnitField* f;
      switch (rng.next() % 3) {
        case 0: s = &s3; f = &hopf3; break;
        case 1: s = &ell; f = &jp; break;
        default: s = &torus; f = &circle; break;
      }
      TangentPoint pt = eval_point(*s, 0, test::random_params(rng, s->atlas[0]));
      PhiTCheck c = phi_t_determinant_check(*s, *f, pt, t);
      worst = std::max(worst, std::abs(c.lhs - c.rhs) / std::max(1.0, std::abs(c.lhs)));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst %.3e", worst);
    report("8d phi_t determinant identity at 100 random samples", worst <= 1e-9, buf);
  }
  {
    // (e) coefficient extraction against the permutation oracle
    SplitMix64 rng(161803);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      int d = 2 + static_cast<int>(rng.next() % 4);
      SquareMatrix h = test::random_matrix(rng, d);
      SquareMatrix a = test::random_matrix(rng, d);
      CoefficientVector got = det_poly_coeffs(h, a);
      CoefficientVector expect = test::det_poly_permutation_oracle(h, a);
      for (int k = 0; k <= d; ++k)
        worst = std::max(worst, std::abs(got[k] - expect[k]) / std::max(1.0, std::abs(expect[k])));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst %.3e", worst);
    report("8e det_poly_coeffs matches the permutation oracle to 1e-10", worst <= 1e-10, buf);
  }
  {
    // (f) strict monotonicity of all four functionals for perturbed Hopf
    QuadratureGrid g = build_grid(s3, {24, 24, 32});
    FunctionalValues base = evaluate_functionals(s3, hopf3, g);
    bool ok = true;
    for (double amp : {0.05, 0.1, 0.2}) {
      FunctionalValues fv = evaluate_functionals(s3, perturbed_field(s3, hopf3, amp, 1), g);
      ok = ok && fv.energy > base.energy && fv.bending_k[0] > base.bending_k[0] &&
           fv.volume_v > base.volume_v;
    }
    report("8f E, B_1, B_n, vol(v) all strictly exceed the Hopf values when perturbed", ok);
  }

  // ---- criterion 9: exclusions stay excluded ---------------------------------
  {
    bool ok = true;
    for (const Hypersurface* s : {&s3, &s5, &torus, &ell})
      if (s->expected_degree && std::abs(*s->expected_degree) >= 2) ok = false;
    report("9 catalog contains no |deg| >= 2 immersion and no singular family", ok);
  }

  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILED",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
