#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazyts/allocation.hpp"
#include "lazyts/estimator.hpp"
#include "lazyts/instance.hpp"

namespace lazyts {

// Rounds at which the tracked allocation is re-optimised.
class LazySchedule {
 public:
  enum class Kind { kExponential, kPeriodic, kEveryRound };

  // {1, 2, 4, 8, ...}
  static LazySchedule exponential() { return LazySchedule(Kind::kExponential, 0); }
  // {1, 1 + P, 1 + 2P, ...}
  static LazySchedule periodic(long period);
  static LazySchedule every_round() { return LazySchedule(Kind::kEveryRound, 1); }
  // "exp", "period:P" or "every".
  static LazySchedule parse(std::string_view text);

  bool contains(long t) const;
  Kind kind() const { return kind_; }
  long period() const { return period_; }
  std::string name() const;

 private:
  LazySchedule(Kind kind, long period) : kind_(kind), period_(period) {}
  Kind kind_;
  long period_;
};

enum class TrackingMode {
  kAveraging,    // track the running sum of allocations
  kNoAveraging,  // track only the current allocation
};

std::string_view to_string(TrackingMode mode);
TrackingMode parse_tracking_mode(std::string_view text);  // "avg" | "noavg"

enum class ThresholdProfile {
  kPaperMain,      // u = 1, delta replaced by 6 delta / (pi^2 t^2)
  kPaperAppendix,  // u = 0.1, plain delta
};

std::string_view to_string(ThresholdProfile profile);
ThresholdProfile parse_threshold_profile(std::string_view text);

struct StopConfig {
  double delta = 0.05;
  double u = 0.1;
  double c = 1.0;
  double sigma = 1.0;
  bool inflate_delta = false;

  // c defaults to max_a ||a||^2 and sigma to the instance's noise level.
  static StopConfig for_profile(ThresholdProfile profile, const Instance& instance, double delta);
};

// Sampling-rule state: forced exploration over a spanning set A0 plus
// tracking of the current or averaged allocation.
class Tracker {
 public:
  // A0 is the greedy spanning subset of the arms.
  Tracker(const ArmSet& arms, TrackingMode mode, Allocation initial);

  // f(t) = c_A0 sqrt(t), c_A0 = lambda_min(sum_{A0} a a^T) / sqrt(d).
  double f_threshold(long t) const;

  // Arm for round t+1 given the statistics after round t. Forced rounds
  // (lambda_min < f(t), and always at t = 0) cycle through A0; other rounds
  // pick the arm of the tracked support lagging its target the most,
  // lowest index on ties.
  std::size_t next_arm(const DesignState& design);
  bool last_was_forced() const { return last_forced_; }

  // w(t) <- w
  void set_allocation(Allocation w);
  // Adds w(t) to the running sum. Called once per round.
  void accumulate();

  TrackingMode mode() const { return mode_; }
  const Allocation& current() const { return current_; }
  const Vector& cumulative() const { return cumulative_; }
  long rounds_accumulated() const { return rounds_; }
  const std::vector<std::size_t>& exploration_set() const { return exploration_set_; }
  double c_a0() const { return c_a0_; }
  // 0-based position in A0 of the next forced arm.
  std::size_t forced_index() const { return forced_index_; }
  // Support of the tracked vector: the running sum (averaging) or w(t).
  std::size_t support_size() const;

 private:
  const ArmSet* arms_;
  TrackingMode mode_;
  Allocation current_;
  Vector cumulative_;
  std::vector<std::size_t> cumulative_support_;
  std::vector<bool> in_cumulative_support_;
  long rounds_ = 0;
  std::vector<std::size_t> exploration_set_;
  double c_a0_ = 0.0;
  std::size_t forced_index_ = 0;
  bool last_forced_ = false;
};

// If t is in the schedule and mu_hat_t has a unique best arm, re-optimise
// w(t) warm-started from w(t-1); otherwise keep it. Returns whether w
// changed. Optimiser failures keep the previous allocation.
bool maybe_update_allocation(Tracker& tracker, const LazySchedule& schedule,
                             const DesignState& design, const ArmSet& arms,
                             const OptimizerOptions& options);

// Z_{a,b,eps}(t) = sgn(mu_hat^T(a-b) + eps) (mu_hat^T(a-b) + eps)^2 / (2 (a-b)^T G^{-1} (a-b)).
double gllr_pair(const DesignState& design, const Vector& a, const Vector& b, double eps);

struct StoppingStatistic {
  double z;
  std::size_t a_hat;
};
// Z(t) = min_{b != a_hat} Z_{a_hat,b}(t). Throws SingularDesign if G is singular.
StoppingStatistic stopping_statistic(const DesignState& design, const ArmSet& arms);

// (1+u) sigma^2 (0.5 log det(G / (u c) + I) + log(1 / delta_t)), with
// delta_t = delta or 6 delta / (pi^2 t^2).
double beta_threshold(const DesignState& design, const StopConfig& cfg, long t);

// lambda_min(G) >= c and Z(t) > beta(delta, t).
bool should_stop(const DesignState& design, const StopConfig& cfg, const ArmSet& arms);

// Outcome of one trial.
struct RunRecord {
  std::string algorithm;
  std::string instance_id;
  std::uint64_t seed = 0;
  long tau = 0;
  std::optional<std::size_t> answer_index;  // finite arm sets
  Vector answer_direction;                  // sphere
  bool correct = false;
  std::size_t support_size = 0;
  double wall_time_s = 0.0;
  bool incomplete = false;
};

struct RoundTrace {
  long t = 0;
  std::size_t arm = 0;
  bool forced = false;
  double reward = 0.0;
  double min_eigenvalue = 0.0;
  double f = 0.0;
  double z = 0.0;     // NaN while the design condition fails
  double beta = 0.0;  // NaN while the design condition fails
  bool updated = false;
};
using TraceFn = std::function<void(const RoundTrace&)>;

inline constexpr long kDefaultMaxRounds = 10'000'000;

struct LtsConfig {
  StopConfig stop;
  LazySchedule schedule = LazySchedule::exponential();
  TrackingMode mode = TrackingMode::kNoAveraging;
  OptimizerOptions optimizer = {1e-6, 200, 1};
  long max_rounds = kDefaultMaxRounds;
};

// Lazy Track-and-Stop.
RunRecord run_lts(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                  const TraceFn& trace = {});

namespace detail {
// Shared run loop. With fixed_allocation the tracker follows that constant
// allocation and never re-optimises.
RunRecord run_tracking(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                       const std::optional<Allocation>& fixed_allocation, const TraceFn& trace);
}  // namespace detail

}  // namespace lazyts
