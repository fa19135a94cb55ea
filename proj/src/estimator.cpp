#include "lazyts/estimator.hpp"

#include "lazyts/errors.hpp"
#include "lazyts/kernels.hpp"
#include "lazyts/tolerances.hpp"

namespace lazyts {

DesignState::DesignState(int dim, std::size_t num_arms)
    : counts_(num_arms, 0), gram_(dim), moment_(Vector::Zero(dim)) {}

void DesignState::update(const Vector& arm, std::optional<std::size_t> arm_index,
                         double reward) {
  if (arm.size() != gram_.dim()) throw InvalidInput("DesignState::update: dimension mismatch");
  if (arm_index) {
    if (*arm_index >= counts_.size()) throw InvalidInput("DesignState::update: bad arm index");
    ++counts_[*arm_index];
  }
  gram_.add_outer(arm);
  moment_ += reward * arm;
  sum_sq_norms_ += arm.squaredNorm();
  ++t_;
  spectrum_.reset();
  estimate_.reset();
}

const SpectralDecomposition& DesignState::spectrum() const {
  if (!spectrum_) spectrum_.emplace(gram_);
  return *spectrum_;
}

const Vector& DesignState::estimate() const {
  if (!estimate_) {
    estimate_ = t_ == 0 ? Vector::Zero(gram_.dim()) : spectrum().pseudo_solve(moment_);
  }
  return *estimate_;
}

Vector estimate(const DesignState& state) { return state.estimate(); }

BestArm best_arm_of(const Vector& theta, const ArmSet& arms) {
  if (!arms.is_finite()) throw InvalidInput("best_arm_of: finite arm set required");
  const auto top = kernels::top_two_inner(arms.arms(), theta);
  return {top.index, top.best - top.second > tol::kBestArmGap};
}

std::size_t empirical_best_arm(const DesignState& state, const ArmSet& arms) {
  return best_arm_of(state.estimate(), arms).index;
}

}  // namespace lazyts
