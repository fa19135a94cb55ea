#pragma once

#include <cstdint>

#include "lazyts/allocation.hpp"
#include "lazyts/lts.hpp"

namespace lazyts {

// Tracks a true optimal allocation w* of the instance (computed once from
// the true mu) with the same forced exploration and stopping rule as LTS.
// Pass a precomputed w* to skip the optimisation when running many trials.
RunRecord run_oracle_tracking(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                              const std::optional<Allocation>& w_star = std::nullopt);

// Tracks a fixed allocation. Throws InvalidInput if A(w) is singular.
RunRecord run_static(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                     const Allocation& w);

// w* as used by run_oracle_tracking.
Allocation oracle_allocation(const Instance& instance);

}  // namespace lazyts
