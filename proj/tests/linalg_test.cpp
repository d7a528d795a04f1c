#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "uvf/linalg.hpp"

using namespace uvf;

namespace {

SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  SquareMatrix m(static_cast<int>(rows.size()));
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

const SquareMatrix kHopfS3 = from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}});

}  // namespace

TEST_CASE("minor_det basics") {
  SquareMatrix id4 = SquareMatrix::identity(4);
  CHECK(minor_det(id4, MinorIndex::of({1, 2}, {1, 2})) == 1.0);

  SquareMatrix rot = from_rows({{0, -1}, {1, 0}});
  CHECK(minor_det(rot, MinorIndex::of({0, 1}, {0, 1})) == 1.0);

  CHECK(minor_det(id4, MinorIndex::of({}, {})) == 1.0);  // empty minor

  CHECK_THROWS_AS(minor_det(id4, MinorIndex::of({0, 4}, {0, 1})), InputError);
  CHECK_THROWS_AS(minor_det(id4, MinorIndex::of({2, 1}, {0, 1})), InputError);
  CHECK_THROWS_AS(minor_det(id4, MinorIndex::of({0, 1}, {0})), InputError);
}

TEST_CASE("minor_det matches cofactor expansion on random 5x5") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    SquareMatrix m = test::random_matrix(rng, 5);
    for_each_combination(5, 2, [&](const int* rows, int) {
      for_each_combination(5, 2, [&](const int* cols, int) {
        MinorIndex idx;
        idx.k = 2;
        idx.rows[0] = rows[0];
        idx.rows[1] = rows[1];
        idx.cols[0] = cols[0];
        idx.cols[1] = cols[1];
        double expect = test::cofactor_det(m, {rows[0], rows[1]}, {cols[0], cols[1]});
        CHECK(std::abs(minor_det(m, idx) - expect) < 1e-12);
      });
    });
    // full determinant against the oracle as well
    CHECK(std::abs(det(m) - test::cofactor_det(m)) < 1e-12);
  }
}

TEST_CASE("det_poly_coeffs hand cases") {
  SquareMatrix a3 = from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}});
  CoefficientVector c = det_poly_coeffs(SquareMatrix::identity(3), a3);
  REQUIRE(c.size == 4);
  CHECK_THAT(c[0], Catch::Matchers::WithinAbs(1.0, 1e-14));
  CHECK_THAT(c[1], Catch::Matchers::WithinAbs(0.0, 1e-14));
  CHECK_THAT(c[2], Catch::Matchers::WithinAbs(1.0, 1e-14));
  CHECK_THAT(c[3], Catch::Matchers::WithinAbs(0.0, 1e-14));

  SplitMix64 rng(7);
  SquareMatrix h = test::random_matrix(rng, 4);
  CoefficientVector cz = det_poly_coeffs(h, SquareMatrix(4));
  CHECK_THAT(cz[0], Catch::Matchers::WithinRel(det(h), 1e-13));
  for (int k = 1; k <= 4; ++k) CHECK_THAT(cz[k], Catch::Matchers::WithinAbs(0.0, 1e-13));

  CHECK_THROWS_AS(det_poly_coeffs(SquareMatrix(3), SquareMatrix(4)), InputError);
}

TEST_CASE("det_poly_coeffs matches the permutation-sum oracle") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    int d = 2 + static_cast<int>(rng.next() % 4);  // dims 2..5
    SquareMatrix h = test::random_matrix(rng, d);
    SquareMatrix a = test::random_matrix(rng, d);
    CoefficientVector got = det_poly_coeffs(h, a);
    CoefficientVector expect = test::det_poly_permutation_oracle(h, a);
    REQUIRE(got.size == expect.size);
    for (int k = 0; k <= d; ++k) {
      double scale = std::max(1.0, std::abs(expect[k]));
      CHECK(std::abs(got[k] - expect[k]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("det_poly_coeffs degree drop when the last row of A vanishes") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    SquareMatrix h = test::random_matrix(rng, 5);
    SquareMatrix a = test::random_matrix(rng, 5);
    for (int c = 0; c < 5; ++c) a(4, c) = 0.0;
    CoefficientVector coeffs = det_poly_coeffs(h, a);
    CHECK_THAT(coeffs[0], Catch::Matchers::WithinRel(det(h), 1e-11));
    CHECK(std::abs(coeffs[5]) < 1e-12);
  }
}

TEST_CASE("minor_square_sum basics") {
  CHECK_THAT(minor_square_sum(kHopfS3, 1), Catch::Matchers::WithinAbs(2.0, 1e-15));
  for (int k = 1; k <= 3; ++k) CHECK(minor_square_sum(SquareMatrix(3), k) == 0.0);

  SplitMix64 rng(11);
  SquareMatrix m = test::random_matrix(rng, 4);
  CHECK_THAT(minor_square_sum(m, 2), Catch::Matchers::WithinRel(test::minor_square_sum_oracle(m, 2), 1e-12));

  CHECK_THROWS_AS(minor_square_sum(m, 0), InputError);
  CHECK_THROWS_AS(minor_square_sum(m, 5), InputError);
}

TEST_CASE("minor_square_sum identities") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    int d = 2 + static_cast<int>(rng.next() % 4);
    SquareMatrix m = test::random_matrix(rng, d);
    double dd = det(m);
    CHECK_THAT(minor_square_sum(m, d), Catch::Matchers::WithinRel(dd * dd, 1e-11));
    CHECK_THAT(minor_square_sum(m, 1), Catch::Matchers::WithinRel(m.frobenius_sq(), 1e-13));
  }
}

TEST_CASE("wedge_max_norm basics") {
  Vec e1{1, 0, 0}, e2{0, 1, 0};
  CHECK(wedge_max_norm({e1, e2}) == 1.0);
  CHECK(wedge_max_norm({2.0 * e1, 3.0 * e2}) == 6.0);

  Vec u{0.3, -0.7, 0.64};
  CHECK(wedge_max_norm({u, u}) == 0.0);

  CHECK_THROWS_AS(wedge_max_norm(nullptr, 0), InputError);
  Vec too_many[4] = {e1, e2, e1, e2};
  CHECK_THROWS_AS(wedge_max_norm(too_many, 4), InputError);
}

TEST_CASE("wedge_max_norm is permutation invariant") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Vec a(5), b(5), c(5);
    for (int i = 0; i < 5; ++i) {
      a[i] = rng.uniform(-1, 1);
      b[i] = rng.uniform(-1, 1);
      c[i] = rng.uniform(-1, 1);
    }
    double base = wedge_max_norm({a, b, c});
    CHECK_THAT(wedge_max_norm({b, a, c}), Catch::Matchers::WithinRel(base, 1e-13));
    CHECK_THAT(wedge_max_norm({c, b, a}), Catch::Matchers::WithinRel(base, 1e-13));
    CHECK_THAT(wedge_max_norm({b, c, a}), Catch::Matchers::WithinRel(base, 1e-13));
  }
}

TEST_CASE("minor_inequality_check hand cases") {
  auto [lhs, rhs] = minor_inequality_check(from_rows({{0, -1}, {1, 0}}));
  CHECK(lhs == 2.0);
  CHECK(rhs == 2.0);

  auto [zl, zr] = minor_inequality_check(SquareMatrix(4));
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);

  CHECK_THROWS_AS(minor_inequality_check(SquareMatrix(3)), InputError);
}

TEST_CASE("minor-sum inequality holds on random even-dim matrices") {
  SplitMix64 rng(57);
  for (int trial = 0; trial < 1000; ++trial) {
    for (int d : {2, 4}) {
      SquareMatrix m = test::random_matrix(rng, d, -2.0, 2.0);
      auto [lhs, rhs] = minor_inequality_check(m);
      CHECK(lhs >= rhs - 1e-12 * std::max(1.0, rhs));
    }
  }
}

TEST_CASE("elementary_symmetric") {
  Vec v{1, 2, 3};
  CHECK(elementary_symmetric(v, 0) == 1.0);
  CHECK(elementary_symmetric(v, 1) == 6.0);
  CHECK(elementary_symmetric(v, 2) == 11.0);
  CHECK(elementary_symmetric(v, 3) == 6.0);
  CHECK_THROWS_AS(elementary_symmetric(v, 4), InputError);
}

TEST_CASE("symmetric_eigen solves small symmetric problems") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 2 + static_cast<int>(rng.next() % 4);
    SquareMatrix m = test::random_matrix(rng, d);
    for (int r = 0; r < d; ++r)
      for (int c = r + 1; c < d; ++c) m(c, r) = m(r, c);
    SymmetricEigen e = symmetric_eigen(m);
    for (int j = 0; j < d; ++j) {
      if (j > 0) CHECK(e.values[j - 1] >= e.values[j]);
      // residual |M q - lambda q|
      for (int r = 0; r < d; ++r) {
        double mv = 0.0;
        for (int c = 0; c < d; ++c) mv += m(r, c) * e.vectors(c, j);
        CHECK_THAT(mv, Catch::Matchers::WithinAbs(e.values[j] * e.vectors(r, j), 1e-10));
      }
    }
    // orthonormal columns
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double g = 0.0;
        for (int r = 0; r < d; ++r) g += e.vectors(r, i) * e.vectors(r, j);
        CHECK_THAT(g, Catch::Matchers::WithinAbs(i == j ? 1.0 : 0.0, 1e-12));
      }
  }
}

TEST_CASE("compensated sum survives cancellation noise") {
  KahanSum s;
  const double big = 1e16;
  s.add(1.0);
  s.add(big);
  s.add(-big);
  s.add(1.0);
  CHECK(s.value() == 2.0);
}
