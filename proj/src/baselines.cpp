#include "lazyts/baselines.hpp"

#include "lazyts/errors.hpp"
#include "lazyts/tolerances.hpp"

namespace lazyts {

Allocation oracle_allocation(const Instance& instance) {
  OptimizerOptions options;
  options.tol = 1e-9;
  options.max_iter = 20000;
  return optimize_allocation(instance.mu(), instance.arm_set(), std::nullopt, options).allocation;
}

RunRecord run_oracle_tracking(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                              const std::optional<Allocation>& w_star) {
  auto rec = detail::run_tracking(instance, cfg, seed,
                                  w_star ? *w_star : oracle_allocation(instance), {});
  rec.algorithm = "oracle";
  return rec;
}

RunRecord run_static(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                     const Allocation& w) {
  const SpectralDecomposition spec(design_matrix(instance.arm_set(), w));
  if (!spec.invertible(tol::kInvertible)) {
    throw InvalidInput("run_static: allocation gives a singular design");
  }
  auto rec = detail::run_tracking(instance, cfg, seed, w, {});
  rec.algorithm = "static";
  return rec;
}

}  // namespace lazyts
