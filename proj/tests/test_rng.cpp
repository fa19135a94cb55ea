#include <doctest.h>

#include <cmath>
#include <set>

#include "lazyts/rng.hpp"

using namespace lazyts;

TEST_SUITE("rng") {
  TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}) ==
          C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                            K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                            K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("same seed and stream reproduce, different streams differ") {
    RandomStream a(7, StreamId::kReward), b(7, StreamId::kReward), c(7, StreamId::kInstance);
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
      const double x = a.next_gaussian();
      CHECK(x == b.next_gaussian());
      any_diff = any_diff || x != c.next_gaussian();
    }
    CHECK(any_diff);
  }

  TEST_CASE("uniforms lie strictly inside (0,1)") {
    RandomStream r(3, StreamId::kDiagnostics);
    for (int i = 0; i < 100000; ++i) {
      const double u = r.next_uniform();
      CHECK_UNARY(u > 0.0 && u < 1.0);
    }
  }

  TEST_CASE("gaussian moments") {
    RandomStream r(5, StreamId::kDiagnostics);
    const int n = 200000;
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = r.next_gaussian();
      s += z;
      s2 += z * z;
      s4 += z * z * z * z;
    }
    CHECK(std::abs(s / n) < 5.0 / std::sqrt(n));
    CHECK(std::abs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(s4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
  }
}
