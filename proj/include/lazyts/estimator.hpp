#pragma once

#include <optional>
#include <vector>

#include "lazyts/instance.hpp"
#include "lazyts/linalg.hpp"

namespace lazyts {

// Sufficient statistics of a run: pull counts, Gram matrix sum a a^T and
// moment vector sum a r, with the least-squares estimate derived from them.
//
// Cache policy: the spectral decomposition of the Gram matrix and the
// estimate are computed on first access after an update and dropped by the
// next update, so estimate() always equals solve_psd(gram(), moment()).
// A DesignState has a single writer; concurrent reads are not supported
// because the accessors fill the cache.
class DesignState {
 public:
  // num_arms = 0 for continuous arm sets (no pull counts kept).
  DesignState(int dim, std::size_t num_arms);

  void update(const Vector& arm, std::optional<std::size_t> arm_index, double reward);

  long t() const { return t_; }
  int dim() const { return static_cast<int>(gram_.dim()); }
  const std::vector<long>& counts() const { return counts_; }
  const SymMatrix& gram() const { return gram_; }
  const Vector& moment() const { return moment_; }
  // Sum of ||a_s||^2 over all pulls, equals trace(gram).
  double sum_sq_norms() const { return sum_sq_norms_; }

  const SpectralDecomposition& spectrum() const;
  double min_eigenvalue() const { return spectrum().min_eigenvalue(); }
  // mu_hat_t; the zero vector before any data.
  const Vector& estimate() const;

 private:
  long t_ = 0;
  std::vector<long> counts_;
  SymMatrix gram_;
  Vector moment_;
  double sum_sq_norms_ = 0.0;
  mutable std::optional<SpectralDecomposition> spectrum_;
  mutable std::optional<Vector> estimate_;
};

Vector estimate(const DesignState& state);

// argmax_a mu_hat^T a over a finite arm set, lowest index on ties.
std::size_t empirical_best_arm(const DesignState& state, const ArmSet& arms);

// Index of argmax_a theta^T a together with whether it is unique within
// tol::kBestArmGap.
struct BestArm {
  std::size_t index;
  bool unique;
};
BestArm best_arm_of(const Vector& theta, const ArmSet& arms);

}  // namespace lazyts
