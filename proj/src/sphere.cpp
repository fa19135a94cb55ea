#include "lazyts/sphere.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <limits>

#include "lazyts/allocation.hpp"
#include "lazyts/environment.hpp"
#include "lazyts/errors.hpp"
#include "lazyts/rng.hpp"

namespace lazyts {

SphereConfig SphereConfig::make(int dim, double epsilon, double delta, double sigma) {
  if (dim < 1) throw InvalidConfig("sphere: dimension must be positive");
  if (!(epsilon > 0.0)) throw InvalidConfig("sphere: epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidConfig("sphere: delta must lie in (0, 1)");
  if (!(sigma >= 0.0)) throw InvalidConfig("sphere: sigma must be non-negative");
  SphereConfig cfg;
  cfg.dim = dim;
  cfg.epsilon = epsilon;
  cfg.delta = delta;
  cfg.sigma = sigma;
  cfg.basis = gen_orthonormal_basis(dim);
  return cfg;
}

double SphereConfig::delta_at(long t) const {
  const double tt = static_cast<double>(std::max(t, 1L));
  return delta_t ? delta_t(t) : delta / (2.0 * tt * tt);
}

const Vector& round_robin_arm(long t, const SphereConfig& cfg) {
  if (t < 1) throw InvalidInput("round_robin_arm: t must be >= 1");
  if (cfg.basis.empty()) throw InvalidConfig("sphere config has no basis");
  const auto d = static_cast<long>(cfg.basis.size());
  return cfg.basis[static_cast<std::size_t>((t - 1) % d)];
}

double epsilon_t(long t, const SphereConfig& cfg) {
  if (t < 1) throw InvalidInput("epsilon_t: t must be >= 1");
  const double blocks = std::ceil(static_cast<double>(t) / cfg.dim);
  const double scale = 4.0 * cfg.sigma * cfg.sigma * std::log(4.0 / cfg.delta_at(t) * blocks);
  return cfg.epsilon / (1.0 + cfg.epsilon / std::sqrt(scale));
}

double sphere_stopping_statistic(const DesignState& design, const SphereConfig& cfg) {
  if (design.t() == 0) return 0.0;
  const double norm = design.estimate().norm();
  if (norm == 0.0) return 0.0;
  return epsilon_t(design.t(), cfg) * norm * design.min_eigenvalue();
}

double sampled_sphere_statistic(const DesignState& design, const SphereConfig& cfg, int samples,
                                std::uint64_t seed) {
  const Vector& mu_hat = design.estimate();
  const double norm = mu_hat.norm();
  if (norm == 0.0) return 0.0;
  const Vector a_hat = mu_hat / norm;
  const double eps_t = epsilon_t(design.t(), cfg);
  RandomStream rng(seed, StreamId::kDiagnostics);
  double best = std::numeric_limits<double>::infinity();
  Vector b(design.dim());
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < b.size(); ++j) b(j) = rng.next_gaussian();
    b.normalize();
    if (std::abs(mu_hat.dot(a_hat - b)) < eps_t) continue;
    best = std::min(best, gllr_pair(design, a_hat, b, eps_t));
  }
  return best;
}

double sphere_zeta(const DesignState& design, const SphereConfig& cfg) {
  return 0.5 * design.spectrum().logdet_shifted(cfg.c) +
         std::log(2.0 / cfg.delta_at(design.t()));
}

bool sphere_should_stop(const DesignState& design, const SphereConfig& cfg) {
  if (design.t() == 0) return false;
  const double lambda = design.min_eigenvalue();
  if (lambda < cfg.c) return false;
  const double norm_sq = design.estimate().squaredNorm();
  if (norm_sq == 0.0) return false;
  const double sigma_sq = cfg.sigma * cfg.sigma;
  const double zeta = sphere_zeta(design, cfg);
  const double eps_t = epsilon_t(design.t(), cfg);
  if (!(eps_t < cfg.epsilon)) return false;
  const double gap = cfg.epsilon - eps_t;
  const double rho = 4.0 * sigma_sq * eps_t * eps_t * zeta / (gap * gap);
  if (lambda < std::max(cfg.c, rho / norm_sq)) return false;
  return sphere_stopping_statistic(design, cfg) >= 2.0 * sigma_sq * zeta;
}

namespace {

void check_margin(const Instance& instance, const SphereConfig& cfg) {
  if (instance.arm_set().is_finite()) throw InvalidConfig("sphere instance required");
  if (instance.dim() != cfg.dim || static_cast<int>(cfg.basis.size()) != cfg.dim) {
    throw InvalidConfig("sphere config dimension does not match the instance");
  }
  // mu lies in M(eps0) for every eps0 < ||mu||; eps < eps0 / 5 is then
  // satisfiable iff eps < ||mu|| / 5.
  if (!(cfg.epsilon < instance.mu().norm() / 5.0)) {
    throw InvalidConfig("epsilon must be below ||mu|| / 5");
  }
}

}  // namespace

RunRecord run_sphere(const Instance& instance, const SphereConfig& cfg, std::uint64_t seed,
                     long max_rounds) {
  const auto start = std::chrono::steady_clock::now();
  check_margin(instance, cfg);
  DesignState design(cfg.dim, 0);
  RewardStream rewards(instance, seed);
  bool stopped = false;
  while (design.t() < max_rounds) {
    const Vector& arm = round_robin_arm(design.t() + 1, cfg);
    design.update(arm, std::nullopt, rewards.sample_reward(arm));
    if (sphere_should_stop(design, cfg)) {
      stopped = true;
      break;
    }
  }
  RunRecord rec;
  rec.algorithm = "sphere-rr";
  rec.seed = seed;
  rec.tau = design.t();
  rec.incomplete = !stopped;
  const Vector& mu_hat = design.estimate();
  rec.answer_direction = mu_hat.norm() > 0.0 ? Vector(mu_hat.normalized()) : Vector(mu_hat);
  const double regret = instance.mu().norm() - instance.mu().dot(rec.answer_direction);
  rec.correct = stopped && regret <= cfg.epsilon;
  rec.support_size = static_cast<std::size_t>(cfg.dim);
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

double sphere_lower_bound(const Instance& instance, const SphereConfig& cfg) {
  check_margin(instance, cfg);
  const double kl = cfg.delta == 0.5 ? 0.0 : kl_bernoulli(cfg.delta, 1.0 - cfg.delta);
  return cfg.sigma * cfg.sigma * (cfg.dim - 1) * kl /
         (kSphereLowerBoundConstant * instance.mu().norm() * cfg.epsilon);
}

double delta_schedule_sum_bound(const SphereConfig& cfg, long terms) {
  if (terms < 1) throw InvalidInput("delta_schedule_sum_bound: terms must be >= 1");
  double sum = 0.0;
  for (long t = 1; t <= terms; ++t) sum += cfg.delta_at(t);
  // sum_{t > n} 1/(2t^2) <= 1/(2n)
  return sum + cfg.delta / (2.0 * static_cast<double>(terms));
}

}  // namespace lazyts
