#include "lazyts/environment.hpp"

#include "lazyts/errors.hpp"

namespace lazyts {

RewardStream::RewardStream(const Instance& instance, std::uint64_t seed)
    : instance_(&instance), rng_(seed, StreamId::kReward) {}

double RewardStream::sample_reward(const Vector& arm) {
  if (arm.size() != instance_->dim()) throw InvalidInput("sample_reward: dimension mismatch");
  // The noise draw happens even when sigma = 0 so that the stream position
  // depends only on t.
  const double z = rng_.next_gaussian();
  ++t_;
  return instance_->mu().dot(arm) + instance_->sigma() * z;
}

double RewardStream::sample_arm(std::size_t index) {
  const auto& set = instance_->arm_set();
  if (index >= set.size()) throw InvalidInput("sample_arm: arm index out of range");
  return sample_reward(set.arm(index));
}

}  // namespace lazyts
