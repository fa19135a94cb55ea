#include <doctest.h>

#include <cmath>
#include <limits>

#include "lazyts/errors.hpp"
#include "lazyts/linalg.hpp"
#include "oracles.hpp"

using namespace lazyts;

namespace {

SymMatrix mat2(double a, double b, double c) {
  DenseMatrix m(2, 2);
  m << a, b, b, c;
  return SymMatrix::from_dense(m);
}

Vector vec2(double x, double y) { return Vector{{x, y}}; }

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("min_eigenvalue examples") {
    CHECK(min_eigenvalue(SymMatrix::identity(2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(SymMatrix::diagonal(vec2(3, 1))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(mat2(2, 1, 2)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("rank deficient matrices report exactly zero") {
    CHECK(min_eigenvalue(SymMatrix::diagonal(vec2(5, 0))) == 0.0);
    CHECK(min_eigenvalue(mat2(1, 1, 1)) == 0.0);
    CHECK(min_eigenvalue(SymMatrix::zero(3)) == 0.0);
  }

  TEST_CASE("non-finite or asymmetric input is rejected") {
    DenseMatrix m(2, 2);
    m << 1, 0, 0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SymMatrix::from_dense(m), InvalidInput);
    m << 1, 2, 3, 4;
    CHECK_THROWS_AS(SymMatrix::from_dense(m), InvalidInput);
    CHECK_THROWS_AS(solve_psd(SymMatrix::identity(2), vec2(1, INFINITY)), InvalidInput);
  }

  TEST_CASE("solve_psd examples") {
    const Vector a = solve_psd(SymMatrix::identity(2), vec2(3, 4));
    CHECK(a(0) == doctest::Approx(3));
    CHECK(a(1) == doctest::Approx(4));
    const Vector b = solve_psd(SymMatrix::diagonal(vec2(2, 0)), vec2(4, 1));
    CHECK(b(0) == doctest::Approx(2));
    CHECK(b(1) == 0.0);
    const Vector c = solve_psd(SymMatrix::diagonal(vec2(2, 2)), vec2(4, 6));
    CHECK(c(0) == doctest::Approx(2));
    CHECK(c(1) == doctest::Approx(3));
  }

  TEST_CASE("pseudo-inverse of a rank-one matrix keeps the row space") {
    // (1,1)(1,1)^T has eigenvalue 2 along (1,1)/sqrt2; pinv v = (v.(1,1))/4 (1,1).
    const Vector x = solve_psd(mat2(1, 1, 1), vec2(3, 1));
    CHECK(x(0) == doctest::Approx(1.0));
    CHECK(x(1) == doctest::Approx(1.0));
  }

  TEST_CASE("logdet_shifted examples") {
    CHECK(logdet_shifted(SymMatrix::zero(2), 0.3) == 0.0);
    CHECK(logdet_shifted(SymMatrix::diagonal(vec2(3, 1)), 1.0) ==
          doctest::Approx(std::log(8.0)).epsilon(1e-12));
    CHECK(logdet_shifted(SymMatrix::identity(2), 1.0) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK_THROWS_AS(logdet_shifted(SymMatrix::identity(2), 0.0), InvalidInput);
    CHECK_THROWS_AS(logdet_shifted(SymMatrix::identity(2), -1.0), InvalidInput);
  }

  TEST_CASE("rank_one_update examples") {
    CHECK(rank_one_update(SymMatrix::zero(2), vec2(1, 0)) == SymMatrix::diagonal(vec2(1, 0)));
    CHECK(rank_one_update(SymMatrix::identity(2), vec2(1, 0)) == SymMatrix::diagonal(vec2(2, 1)));
    CHECK(rank_one_update(SymMatrix::identity(2), vec2(1, 1)) == mat2(2, 1, 2));
    CHECK_THROWS_AS(rank_one_update(SymMatrix::identity(2), Vector::Ones(3)), InvalidInput);
  }

  TEST_CASE("property: rank-one updates never lower the smallest eigenvalue") {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = gen.integer(2, 6);
      const auto m = SymMatrix::from_dense(gen.spd(d, 0.0, 3.0));
      const Vector a = gen.normal_vec(d);
      CHECK(min_eigenvalue(rank_one_update(m, a)) >= min_eigenvalue(m) - 1e-12);
    }
  }

  TEST_CASE("property: solve_psd inverts random invertible matrices") {
    oracle::Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
      const int d = gen.integer(2, 8);
      const DenseMatrix m = gen.spd(d, 0.5, 5.0);
      const Vector x = gen.normal_vec(d);
      const Vector back = solve_psd(SymMatrix::from_dense(m), m * x);
      CHECK((back - x).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
  }

  TEST_CASE("property: logdet_shifted is the sum of log(1 + lambda/s)") {
    oracle::Gen gen(13);
    for (int trial = 0; trial < 100; ++trial) {
      const int d = gen.integer(1, 6);
      const DenseMatrix m = gen.spd(d, 0.0, 10.0);
      const double s = gen.uniform(0.05, 4.0);
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
      double expected = 0.0;
      for (int i = 0; i < d; ++i) expected += std::log1p(es.eigenvalues()(i) / s);
      CHECK(std::abs(logdet_shifted(SymMatrix::from_dense(m), s) - expected) <= 1e-9);
    }
  }

  TEST_CASE("add_outer keeps the matrix exactly symmetric") {
    oracle::Gen gen(14);
    SymMatrix m(4);
    for (int i = 0; i < 1000; ++i) m.add_outer(gen.normal_vec(4), gen.uniform(0, 2));
    CHECK(m.dense() == m.dense().transpose());
  }
}
