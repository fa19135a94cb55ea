#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lazyts/estimator.hpp"
#include "lazyts/instance.hpp"
#include "lazyts/lts.hpp"

namespace lazyts {

// Constant of the continuous lower bound as stated; the derivation's last
// step gives 40 instead. Both are exposed, the bound uses the first.
inline constexpr double kSphereLowerBoundConstant = 20.0;
inline constexpr double kSphereLowerBoundProofConstant = 40.0;

// Best-arm identification on S^{d-1} with accuracy epsilon.
struct SphereConfig {
  int dim = 2;
  double epsilon = 0.1;
  double delta = 0.05;
  double sigma = 1.0;
  // Lower bound on lambda_min(G) required to stop; also scales the log-det.
  double c = 1.0;
  // delta_t; must be summable with sum < delta. Default delta / (2 t^2).
  std::function<double(long)> delta_t;
  // Round-robin arms, an orthonormal basis.
  std::vector<Vector> basis;

  // Standard basis, default delta_t rule. Throws InvalidConfig on
  // non-positive epsilon, delta outside (0,1) or negative sigma.
  static SphereConfig make(int dim, double epsilon, double delta, double sigma);

  double delta_at(long t) const;
};

// u_{(t mod d)}: u_1, u_2, ..., u_d, u_1, ... for t = 1, 2, ...
const Vector& round_robin_arm(long t, const SphereConfig& cfg);

// eps_t = eps / (1 + eps (4 sigma^2 log(4 ceil(t/d) / delta_t))^{-1/2}), always < eps.
double epsilon_t(long t, const SphereConfig& cfg);

// Lower bound on the continuous GLLR statistic
//   inf over {b : |mu_hat^T(a_hat - b)| >= eps_t} of Z_{a_hat,b,eps_t}(t).
// Uses G >= lambda_min I and mu^T(a* - b) = ||mu|| ||a* - b||^2 / 2 on the
// sphere, which reduces the infimum to a one-dimensional problem attained
// at the constraint boundary: eps_t ||mu_hat|| lambda_min(G). Returns 0
// when mu_hat = 0.
double sphere_stopping_statistic(const DesignState& design, const SphereConfig& cfg);

// Monte-Carlo estimate of the exact infimum over `samples` random feasible
// directions b, for diagnostics. +inf when no sample was feasible.
double sampled_sphere_statistic(const DesignState& design, const SphereConfig& cfg, int samples,
                                std::uint64_t seed);

// zeta_t = 0.5 log det(G / c + I) + log(2 / delta_t)
double sphere_zeta(const DesignState& design, const SphereConfig& cfg);

// Z >= 2 sigma^2 zeta_t and lambda_min(G) >= max(c, rho_t / ||mu_hat||^2),
// rho_t = 4 sigma^2 eps_t^2 zeta_t / (eps - eps_t)^2.
bool sphere_should_stop(const DesignState& design, const SphereConfig& cfg);

// Round-robin sampling until sphere_should_stop. The answer is
// mu_hat / ||mu_hat||; `correct` means it is epsilon-optimal.
// Throws InvalidConfig unless epsilon < ||mu|| / 5.
RunRecord run_sphere(const Instance& instance, const SphereConfig& cfg, std::uint64_t seed,
                     long max_rounds = kDefaultMaxRounds);

// sigma^2 (d - 1) kl(delta, 1 - delta) / (20 ||mu|| epsilon). Throws
// InvalidConfig unless epsilon < ||mu|| / 5.
double sphere_lower_bound(const Instance& instance, const SphereConfig& cfg);

// Partial sum of delta_t over t = 1..terms plus the tail bound
// delta / (2 terms) valid for the default rule.
double delta_schedule_sum_bound(const SphereConfig& cfg, long terms);

}  // namespace lazyts
