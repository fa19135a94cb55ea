#pragma once

#include <optional>
#include <vector>

#include "lazyts/instance.hpp"
#include "lazyts/linalg.hpp"

namespace lazyts {

// A point of the simplex over the K arms.
class Allocation {
 public:
  // Throws InvalidInput unless every weight is finite and >= 0 and the
  // weights sum to 1 within tol::kSimplexSum.
  explicit Allocation(Vector weights);

  // Clamps tiny negative round-off to 0 and rescales to sum 1. For weights
  // produced by arithmetic on simplex points.
  static Allocation normalized(Vector weights);
  static Allocation uniform(std::size_t num_arms);
  static Allocation uniform_over(std::size_t num_arms, const std::vector<std::size_t>& indices);
  static Allocation vertex(std::size_t num_arms, std::size_t index);

  const Vector& weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_(static_cast<Eigen::Index>(i)); }
  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  // Indices with weight > tol::kSupportCutoff, ascending.
  const std::vector<std::size_t>& support() const { return support_; }

 private:
  struct Trusted {};
  Allocation(Vector weights, Trusted);
  void index_support();

  Vector weights_;
  std::vector<std::size_t> support_;
};

// A(w) = sum_a w_a a a^T, summed over the support.
SymMatrix design_matrix(const ArmSet& arms, const Allocation& w);

// psi(mu, w): min over a != a*_mu of (mu^T(a* - a))^2 / (2 (a* - a)^T A(w)^{-1} (a* - a)),
// or 0 when A(w) is singular. Throws InvalidInstance if a*_mu is not unique.
double psi(const Vector& mu, const Allocation& w, const ArmSet& arms);

// Supergradient of w -> psi(mu, w) from the minimising term (lowest index
// on ties). Throws SingularDesign when A(w) is singular.
Vector psi_supergradient(const Vector& mu, const Allocation& w, const ArmSet& arms);

struct OptimizerOptions {
  double tol = 1e-6;
  int max_iter = 1000;
  // Iteration k (0-based) uses step 2 / (k + step_offset + 2). An offset of
  // 0 would make the first step a full jump to a vertex, which gives a
  // singular design whenever K > 1 arms are needed to span R^d.
  int step_offset = 1;
};

struct OptimizerResult {
  Allocation allocation;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double duality_gap_estimate = 0.0;
};

// Frank-Wolfe ascent of psi(mu, .) over the simplex. Starts from
// warm_start when given (blended with the cold start if its design is
// singular), else from the uniform allocation over a greedy spanning subset.
// Stops once the Frank-Wolfe gap g^T(e_b - w) <= tol; otherwise returns the
// best iterate after max_iter iterations.
OptimizerResult optimize_allocation(const Vector& mu, const ArmSet& arms,
                                    const std::optional<Allocation>& warm_start = std::nullopt,
                                    const OptimizerOptions& options = {});

// Greedy max-volume subset of d arms spanning R^d (Gram-Schmidt pivoting,
// lowest index on ties).
std::vector<std::size_t> greedy_spanning_subset(const ArmSet& arms);

// T*_mu = 1 / psi*(mu).
double characteristic_time(const Vector& mu, const ArmSet& arms);

double kl_bernoulli(double a, double b);

// sigma^2 T*_mu kl(delta, 1 - delta).
double sample_complexity_lower_bound(const Instance& instance, double delta);

double d_infty(const Allocation& w, const Allocation& v);

}  // namespace lazyts
