#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "lazyts/environment.hpp"
#include "lazyts/errors.hpp"

using namespace lazyts;
using testing_helpers::rows;
using testing_helpers::vec;

TEST_SUITE("environment") {
  TEST_CASE("zero noise returns the mean exactly") {
    const Instance inst(ArmSet::finite(rows({{1, 0}, {0, 1}})), vec({1, 0}), 0.0);
    RewardStream s(inst, 3);
    CHECK(s.sample_reward(vec({1, 0})) == 1.0);
    CHECK(s.sample_arm(0) == 1.0);
    CHECK(s.t() == 2);
  }

  TEST_CASE("rewards are reproducible per seed and distinct across draws") {
    const Instance inst = orthonormal_instance(vec({1, 0}));
    RewardStream s1(inst, 42), s2(inst, 42), s3(inst, 43);
    const double x1 = s1.sample_arm(0), x2 = s1.sample_arm(0);
    CHECK(x1 != x2);
    CHECK(s2.sample_arm(0) == x1);
    CHECK(s2.sample_arm(0) == x2);
    CHECK(s3.sample_arm(0) != x1);
  }

  TEST_CASE("replaying an arm sequence reproduces rewards bit for bit") {
    const Instance inst = gen_many_arms(20, 2);
    std::vector<std::size_t> arms;
    std::vector<double> first;
    RewardStream s(inst, 9);
    for (int t = 0; t < 500; ++t) {
      arms.push_back(static_cast<std::size_t>((t * 7) % 20));
      first.push_back(s.sample_arm(arms.back()));
    }
    RewardStream replay(inst, 9);
    for (std::size_t t = 0; t < arms.size(); ++t) CHECK(replay.sample_arm(arms[t]) == first[t]);
  }

  TEST_CASE("sample mean converges to mu^T a") {
    const Instance inst(ArmSet::finite(rows({{1, 0}, {0.6, 0.8}})), vec({0.7, -0.3}), 1.3);
    RewardStream s(inst, 1234);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += s.sample_arm(1);
    const double expected = 0.7 * 0.6 - 0.3 * 0.8;
    CHECK(std::abs(sum / n - expected) <= 3.0 * 1.3 / std::sqrt(n));
  }

  TEST_CASE("dimension mismatch is rejected") {
    const Instance inst = orthonormal_instance(vec({1, 0}));
    RewardStream s(inst, 1);
    CHECK_THROWS_AS(s.sample_reward(vec({1, 0, 0})), InvalidInput);
    CHECK_THROWS_AS(s.sample_arm(5), InvalidInput);
  }
}
