#include "lazyts/allocation.hpp"

#include <algorithm>
#include <cmath>

#include "lazyts/errors.hpp"
#include "lazyts/estimator.hpp"
#include "lazyts/kernels.hpp"
#include "lazyts/tolerances.hpp"

namespace lazyts {

Allocation::Allocation(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw InvalidInput("allocation: empty weight vector");
  if (!weights_.allFinite()) throw InvalidInput("allocation: non-finite weight");
  if (weights_.minCoeff() < 0.0) throw InvalidInput("allocation: negative weight");
  if (std::abs(weights_.sum() - 1.0) > tol::kSimplexSum) {
    throw InvalidInput("allocation: weights do not sum to 1");
  }
  index_support();
}

Allocation::Allocation(Vector weights, Trusted) : weights_(std::move(weights)) {
  index_support();
}

Allocation Allocation::normalized(Vector weights) {
  if (weights.size() == 0 || !weights.allFinite()) {
    throw InvalidInput("allocation: invalid weight vector");
  }
  weights = weights.cwiseMax(0.0);
  const double total = weights.sum();
  if (!(total > 0.0)) throw InvalidInput("allocation: weights sum to zero");
  weights /= total;
  return Allocation(std::move(weights), Trusted{});
}

Allocation Allocation::uniform(std::size_t num_arms) {
  if (num_arms == 0) throw InvalidInput("allocation: need at least one arm");
  return Allocation(Vector::Constant(static_cast<Eigen::Index>(num_arms), 1.0 / num_arms),
                    Trusted{});
}

Allocation Allocation::uniform_over(std::size_t num_arms,
                                    const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw InvalidInput("allocation: empty index set");
  Vector w = Vector::Zero(static_cast<Eigen::Index>(num_arms));
  for (auto i : indices) {
    if (i >= num_arms) throw InvalidInput("allocation: index out of range");
    w(static_cast<Eigen::Index>(i)) += 1.0;
  }
  return normalized(std::move(w));
}

Allocation Allocation::vertex(std::size_t num_arms, std::size_t index) {
  return uniform_over(num_arms, {index});
}

void Allocation::index_support() {
  support_.clear();
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) > tol::kSupportCutoff) support_.push_back(static_cast<std::size_t>(i));
  }
}

namespace {

void check_sizes(const ArmSet& arms, const Allocation& w) {
  if (!arms.is_finite()) throw InvalidInput("allocation requires a finite arm set");
  if (w.size() != arms.size()) throw InvalidInput("allocation has wrong length");
}

SymMatrix design_from_weights(const ArmSet& arms, const Vector& w) {
  SymMatrix a(arms.dim());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > 0.0) a.add_outer(arms.arms().row(i).transpose(), w(i));
  }
  return a;
}

std::size_t unique_best_arm(const Vector& mu, const ArmSet& arms) {
  if (mu.size() != arms.dim()) throw InvalidInput("mu has wrong dimension");
  const auto best = best_arm_of(mu, arms);
  if (!best.unique) throw InvalidInstance("best arm of mu is not unique");
  return best.index;
}

// psi and its supergradient at one point, sharing the factorisation.
struct PsiEval {
  double value = 0.0;
  bool invertible = false;
  Vector gradient;
};

PsiEval evaluate(const Vector& mu, const Vector& w, const ArmSet& arms, std::size_t best,
                 bool with_gradient) {
  PsiEval out;
  const SpectralDecomposition spec(design_from_weights(arms, w));
  if (!spec.invertible(tol::kInvertible)) return out;
  out.invertible = true;
  const DenseMatrix inverse = spec.pseudo_inverse();
  const auto term = kernels::min_gap_ratio(arms.arms(), best, mu, inverse);
  out.value = term.value;
  if (with_gradient) {
    const Vector x = arms.arm(best) - arms.arm(term.index);
    const Vector v = inverse * x;
    const double quad = x.dot(v);
    const double gap = mu.dot(x);
    kernels::squared_projections(arms.arms(), v, out.gradient);
    out.gradient *= gap * gap / (2.0 * quad * quad);
  }
  return out;
}

}  // namespace

SymMatrix design_matrix(const ArmSet& arms, const Allocation& w) {
  check_sizes(arms, w);
  SymMatrix a(arms.dim());
  for (auto i : w.support()) a.add_outer(arms.arm(i), w[i]);
  return a;
}

double psi(const Vector& mu, const Allocation& w, const ArmSet& arms) {
  check_sizes(arms, w);
  const auto best = unique_best_arm(mu, arms);
  return evaluate(mu, w.weights(), arms, best, false).value;
}

Vector psi_supergradient(const Vector& mu, const Allocation& w, const ArmSet& arms) {
  check_sizes(arms, w);
  const auto best = unique_best_arm(mu, arms);
  auto eval = evaluate(mu, w.weights(), arms, best, true);
  if (!eval.invertible) throw SingularDesign("psi_supergradient: A(w) is singular");
  return std::move(eval.gradient);
}

std::vector<std::size_t> greedy_spanning_subset(const ArmSet& arms) {
  if (!arms.is_finite()) throw InvalidInput("greedy_spanning_subset: finite arm set required");
  const int d = arms.dim();
  // Residuals of every arm against the span of the chosen ones.
  ArmMatrix residual = arms.arms();
  std::vector<std::size_t> chosen;
  std::vector<bool> used(arms.size(), false);
  for (int k = 0; k < d; ++k) {
    std::size_t pick = kernels::kNoIndex;
    double best_norm = 0.0;
    for (Eigen::Index i = 0; i < residual.rows(); ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double n = residual.row(i).squaredNorm();
      if (n > best_norm) {
        best_norm = n;
        pick = static_cast<std::size_t>(i);
      }
    }
    if (pick == kernels::kNoIndex || best_norm <= 1e-20) {
      throw InvalidInstance("arms do not span R^d");
    }
    used[pick] = true;
    chosen.push_back(pick);
    const Vector q =
        residual.row(static_cast<Eigen::Index>(pick)).transpose() / std::sqrt(best_norm);
    residual -= (residual * q) * q.transpose();
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

OptimizerResult optimize_allocation(const Vector& mu, const ArmSet& arms,
                                    const std::optional<Allocation>& warm_start,
                                    const OptimizerOptions& options) {
  if (!arms.is_finite()) throw InvalidInput("optimize_allocation: finite arm set required");
  if (options.max_iter < 1) throw InvalidInput("optimize_allocation: max_iter must be >= 1");
  if (options.step_offset < 0) throw InvalidInput("optimize_allocation: negative step offset");
  const auto best = unique_best_arm(mu, arms);
  const auto k_arms = arms.size();

  const Vector cold = Allocation::uniform_over(k_arms, greedy_spanning_subset(arms)).weights();
  Vector w;
  if (warm_start) {
    if (warm_start->size() != k_arms) throw InvalidInput("warm start has wrong length");
    w = warm_start->weights();
    if (!SpectralDecomposition(design_from_weights(arms, w)).invertible(tol::kInvertible)) {
      w = 0.5 * (w + cold);
    }
  } else {
    w = cold;
  }

  OptimizerResult result{Allocation::normalized(w), -1.0, 0, false, 0.0};
  for (int k = 0; k < options.max_iter; ++k) {
    const PsiEval eval = evaluate(mu, w, arms, best, true);
    if (!eval.invertible) break;  // unreachable from an invertible start
    Eigen::Index vertex = 0;
    const double top = eval.gradient.maxCoeff(&vertex);
    const double gap = top - eval.gradient.dot(w);
    result.iterations = k + 1;
    if (eval.value > result.value) {
      result.value = eval.value;
      result.allocation = Allocation::normalized(w);
      result.duality_gap_estimate = gap;
    }
    if (gap <= options.tol) {
      result.converged = true;
      result.value = eval.value;
      result.allocation = Allocation::normalized(w);
      result.duality_gap_estimate = gap;
      break;
    }
    const double step = 2.0 / (k + options.step_offset + 2.0);
    w *= 1.0 - step;
    w(vertex) += step;
  }
  result.value = std::max(result.value, 0.0);
  return result;
}

double characteristic_time(const Vector& mu, const ArmSet& arms) {
  OptimizerOptions options;
  options.tol = 1e-6;
  options.max_iter = 20000;
  const auto result = optimize_allocation(mu, arms, std::nullopt, options);
  return 1.0 / result.value;
}

double kl_bernoulli(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    throw InvalidInput("kl_bernoulli: arguments must lie in (0, 1)");
  }
  return a * std::log(a / b) + (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
}

double sample_complexity_lower_bound(const Instance& instance, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  const double t_star = characteristic_time(instance.mu(), instance.arm_set());
  return instance.sigma() * instance.sigma() * t_star * kl_bernoulli(delta, 1.0 - delta);
}

double d_infty(const Allocation& w, const Allocation& v) {
  if (w.size() != v.size()) throw InvalidInput("d_infty: length mismatch");
  return (w.weights() - v.weights()).cwiseAbs().maxCoeff();
}

}  // namespace lazyts
