#pragma once

#include <cstdint>

#include "lazyts/instance.hpp"
#include "lazyts/rng.hpp"

namespace lazyts {

// Reward feedback for one run. Identical (instance, seed) and identical arm
// sequences give bit-identical reward sequences.
class RewardStream {
 public:
  // The instance must outlive the stream.
  RewardStream(const Instance& instance, std::uint64_t seed);

  // mu^T arm + sigma * z, advances t by one.
  double sample_reward(const Vector& arm);
  // Convenience for finite arm sets.
  double sample_arm(std::size_t index);

  long t() const { return t_; }

 private:
  const Instance* instance_;
  RandomStream rng_;
  long t_ = 0;
};

}  // namespace lazyts
