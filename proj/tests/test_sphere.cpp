#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lazyts/errors.hpp"
#include "lazyts/sphere.hpp"
#include "oracles.hpp"

using namespace lazyts;
using testing_helpers::vec;

namespace {

Instance sphere_instance(const Vector& mu, double sigma) {
  return Instance(ArmSet::sphere(static_cast<int>(mu.size())), mu, sigma);
}

}  // namespace

TEST_SUITE("sphere") {
  TEST_CASE("round robin over the basis") {
    const auto cfg = SphereConfig::make(2, 0.1, 0.05, 1.0);
    CHECK(round_robin_arm(1, cfg) == vec({1, 0}));
    CHECK(round_robin_arm(2, cfg) == vec({0, 1}));
    CHECK(round_robin_arm(3, cfg) == vec({1, 0}));
    CHECK_THROWS_AS(round_robin_arm(0, cfg), InvalidInput);
  }

  TEST_CASE("round-robin gram matrices") {
    for (int d : {2, 3, 5}) {
      const auto cfg = SphereConfig::make(d, 0.1, 0.05, 1.0);
      DesignState s(d, 0);
      const int m = 7;
      for (long t = 1; t <= m * d; ++t) s.update(round_robin_arm(t, cfg), std::nullopt, 0.0);
      CHECK(s.gram().dense() == m * DenseMatrix::Identity(d, d));
      s.update(round_robin_arm(m * d + 1, cfg), std::nullopt, 0.0);
      DenseMatrix expected = m * DenseMatrix::Identity(d, d);
      expected(0, 0) = m + 1;
      CHECK(s.gram().dense() == expected);
    }
  }

  TEST_CASE("epsilon_t") {
    const auto cfg = SphereConfig::make(2, 0.1, 0.05, 1.0);
    CHECK(epsilon_t(2, cfg) == doctest::Approx(0.09807094434891903).epsilon(1e-13));
    double last = 0.0;
    for (long t = 1; t < 1000000; t *= 3) {
      const double e = epsilon_t(t, cfg);
      CHECK(e < cfg.epsilon);
      CHECK(e > last);
      last = e;
    }
    CHECK(epsilon_t(1L << 50, cfg) > 0.0995);
  }

  TEST_CASE("surrogate statistic") {
    // ||mu_hat|| = 1, gram = 5 I; eps_t is fixed by the config, so scale to 0.1.
    auto cfg = SphereConfig::make(2, 0.1, 0.05, 1.0);
    DesignState s(2, 0);
    for (int i = 0; i < 5; ++i) {
      s.update(vec({1, 0}), std::nullopt, 0.6);
      s.update(vec({0, 1}), std::nullopt, 0.8);
    }
    const double eps_t = epsilon_t(s.t(), cfg);
    CHECK(sphere_stopping_statistic(s, cfg) == doctest::Approx(eps_t * 1.0 * 5.0).epsilon(1e-12));
    CHECK(0.1 * 1.0 * 5.0 == doctest::Approx(0.5));

    DesignState zero(2, 0);
    zero.update(vec({1, 0}), std::nullopt, 0.0);
    zero.update(vec({0, 1}), std::nullopt, 0.0);
    CHECK(sphere_stopping_statistic(zero, cfg) == 0.0);
    CHECK(sphere_stopping_statistic(DesignState(2, 0), cfg) == 0.0);
  }

  TEST_CASE("doubling lambda_min doubles the surrogate") {
    const auto cfg = SphereConfig::make(2, 0.1, 0.05, 1.0);
    // Same t and estimate, gram 2x: scale the arms by sqrt 2.
    DesignState a(2, 0), b(2, 0);
    for (int i = 0; i < 3; ++i) {
      a.update(vec({1, 0}), std::nullopt, 0.5);
      a.update(vec({0, 1}), std::nullopt, 0.5);
      b.update(vec({M_SQRT2, 0}), std::nullopt, 0.5 * M_SQRT2);
      b.update(vec({0, M_SQRT2}), std::nullopt, 0.5 * M_SQRT2);
    }
    CHECK(sphere_stopping_statistic(b, cfg) ==
          doctest::Approx(2.0 * sphere_stopping_statistic(a, cfg)).epsilon(1e-12));
  }

  TEST_CASE("property: surrogate never exceeds feasible exact GLLR values") {
    oracle::Gen gen(61);
    for (int trial = 0; trial < 10; ++trial) {
      const int d = gen.integer(2, 5);
      const auto cfg = SphereConfig::make(d, 0.2, 0.05, 1.0);
      DesignState s(d, 0);
      const Vector mu = gen.normal_vec(d);
      for (int t = 0; t < 4 * d; ++t) {
        const Vector a = gen.normal_vec(d);
        s.update(a, std::nullopt, mu.dot(a) + 0.3 * gen.normal());
      }
      const double surrogate = sphere_stopping_statistic(s, cfg);
      const double sampled = sampled_sphere_statistic(s, cfg, 1000, 7 + trial);
      CHECK(sampled >= surrogate - 1e-9);

      // Same check with an independent direction generator.
      const Vector a_hat = s.estimate().normalized();
      const double eps_t = epsilon_t(s.t(), cfg);
      int feasible = 0;
      for (int i = 0; i < 1000; ++i) {
        const Vector b = gen.unit_vec(d);
        if (std::abs(s.estimate().dot(a_hat - b)) < eps_t) continue;
        ++feasible;
        CHECK(gllr_pair(s, a_hat, b, eps_t) >= surrogate - 1e-9);
      }
      CHECK(feasible > 0);
    }
  }

  TEST_CASE("stopping rule guards") {
    const auto cfg = SphereConfig::make(2, 0.1, 0.05, 1.0);
    DesignState s(2, 0);
    CHECK_FALSE(sphere_should_stop(s, cfg));
    s.update(vec({1, 0}), std::nullopt, 100.0);
    CHECK_FALSE(sphere_should_stop(s, cfg));  // lambda_min = 0 < c
  }

  TEST_CASE("rho diverges as eps_t approaches eps") {
    auto cfg = SphereConfig::make(2, 0.1, 0.05, 0.1);
    DesignState s(2, 0);
    for (int i = 0; i < 200; ++i) {
      s.update(vec({1, 0}), std::nullopt, 1.0);
      s.update(vec({0, 1}), std::nullopt, 0.0);
    }
    CHECK(sphere_should_stop(s, cfg));
    cfg.sigma = 1e6;  // eps_t -> eps
    CHECK_FALSE(sphere_should_stop(s, cfg));
  }

  TEST_CASE("runs terminate and are epsilon-correct") {
    const Instance inst = sphere_instance(vec({2, 0}), 0.5);
    const auto cfg = SphereConfig::make(2, 0.3, 0.05, 0.5);
    int errors = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto rec = run_sphere(inst, cfg, seed);
      CHECK_FALSE(rec.incomplete);
      errors += rec.correct ? 0 : 1;
    }
    CHECK(errors <= 2);
  }

  TEST_CASE("noiseless run recovers the direction") {
    const Vector mu = vec({0.6, 0.0, 0.8});
    const Instance inst = sphere_instance(mu, 1e-9);
    const auto cfg = SphereConfig::make(3, 0.1, 0.05, 1e-9);
    const auto rec = run_sphere(inst, cfg, 5);
    CHECK_FALSE(rec.incomplete);
    CHECK(rec.correct);
    const double angle = std::acos(std::min(1.0, rec.answer_direction.dot(mu.normalized())));
    CHECK(angle < 1e-6);
  }

  TEST_CASE("margin validation") {
    const Instance inst = sphere_instance(vec({0.4, 0}), 1.0);
    const auto cfg = SphereConfig::make(2, 0.1, 0.05, 1.0);
    CHECK_THROWS_AS(run_sphere(inst, cfg, 1), InvalidConfig);
    CHECK_THROWS_AS(sphere_lower_bound(inst, cfg), InvalidConfig);
    CHECK_THROWS_AS(SphereConfig::make(2, 0.0, 0.05, 1.0), InvalidConfig);
    CHECK_THROWS_AS(SphereConfig::make(2, 0.1, 1.0, 1.0), InvalidConfig);
  }

  TEST_CASE("lower bound") {
    const auto cfg2 = SphereConfig::make(2, 0.1, 0.05, 1.0);
    const Instance d2 = sphere_instance(vec({1, 0}), 1.0);
    CHECK(sphere_lower_bound(d2, cfg2) == doctest::Approx(1.324997540624898).epsilon(1e-12));
    CHECK(sphere_lower_bound(d2, cfg2) == doctest::Approx(1.3249).epsilon(1e-4));

    Vector mu11 = Vector::Zero(11);
    mu11(0) = 1.0;
    const auto cfg11 = SphereConfig::make(11, 0.1, 0.05, 1.0);
    CHECK(sphere_lower_bound(sphere_instance(mu11, 1.0), cfg11) ==
          doctest::Approx(10.0 * sphere_lower_bound(d2, cfg2)));

    const auto half = SphereConfig::make(2, 0.1, 0.5, 1.0);
    CHECK(sphere_lower_bound(d2, half) == 0.0);
    CHECK(kSphereLowerBoundProofConstant == 2.0 * kSphereLowerBoundConstant);
  }

  TEST_CASE("default delta_t schedule sums below delta") {
    const auto cfg = SphereConfig::make(2, 0.1, 0.05, 1.0);
    const double bound = delta_schedule_sum_bound(cfg, 100000);
    CHECK(bound < cfg.delta);
    CHECK(bound >= cfg.delta * M_PI * M_PI / 12.0);
  }
}
