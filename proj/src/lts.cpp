#include "lazyts/lts.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "lazyts/environment.hpp"
#include "lazyts/errors.hpp"
#include "lazyts/kernels.hpp"
#include "lazyts/tolerances.hpp"

namespace lazyts {

LazySchedule LazySchedule::periodic(long period) {
  if (period < 1) throw InvalidInput("periodic schedule needs P >= 1");
  return LazySchedule(Kind::kPeriodic, period);
}

LazySchedule LazySchedule::parse(std::string_view text) {
  if (text == "exp") return exponential();
  if (text == "every") return every_round();
  constexpr std::string_view prefix = "period:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto digits = text.substr(prefix.size());
    long p = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && p >= 1) return periodic(p);
  }
  throw InvalidInput("unknown schedule '" + std::string(text) + "' (expected exp, period:P, every)");
}

bool LazySchedule::contains(long t) const {
  if (t < 1) return false;
  switch (kind_) {
    case Kind::kExponential:
      return (t & (t - 1)) == 0;
    case Kind::kPeriodic:
      return (t - 1) % period_ == 0;
    case Kind::kEveryRound:
      return true;
  }
  return false;
}

std::string LazySchedule::name() const {
  switch (kind_) {
    case Kind::kExponential:
      return "exp";
    case Kind::kPeriodic:
      return "period:" + std::to_string(period_);
    case Kind::kEveryRound:
      return "every";
  }
  return {};
}

std::string_view to_string(TrackingMode mode) {
  return mode == TrackingMode::kAveraging ? "avg" : "noavg";
}

TrackingMode parse_tracking_mode(std::string_view text) {
  if (text == "avg") return TrackingMode::kAveraging;
  if (text == "noavg") return TrackingMode::kNoAveraging;
  throw InvalidInput("unknown tracking mode '" + std::string(text) + "' (expected avg, noavg)");
}

std::string_view to_string(ThresholdProfile profile) {
  return profile == ThresholdProfile::kPaperMain ? "paper-main" : "paper-appendix";
}

ThresholdProfile parse_threshold_profile(std::string_view text) {
  if (text == "paper-main") return ThresholdProfile::kPaperMain;
  if (text == "paper-appendix") return ThresholdProfile::kPaperAppendix;
  throw InvalidInput("unknown profile '" + std::string(text) +
                     "' (expected paper-main, paper-appendix)");
}

StopConfig StopConfig::for_profile(ThresholdProfile profile, const Instance& instance,
                                   double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  StopConfig cfg;
  cfg.delta = delta;
  cfg.sigma = instance.sigma();
  cfg.c = instance.arm_set().max_norm() * instance.arm_set().max_norm();
  if (profile == ThresholdProfile::kPaperMain) {
    cfg.u = 1.0;
    cfg.inflate_delta = true;
  } else {
    cfg.u = 0.1;
    cfg.inflate_delta = false;
  }
  return cfg;
}

Tracker::Tracker(const ArmSet& arms, TrackingMode mode, Allocation initial)
    : arms_(&arms),
      mode_(mode),
      current_(std::move(initial)),
      cumulative_(Vector::Zero(static_cast<Eigen::Index>(arms.size()))),
      in_cumulative_support_(arms.size(), false) {
  if (current_.size() != arms.size()) throw InvalidInput("tracker: allocation has wrong length");
  exploration_set_ = greedy_spanning_subset(arms);
  SymMatrix g(arms.dim());
  for (auto i : exploration_set_) g.add_outer(arms.arm(i));
  c_a0_ = min_eigenvalue(g) / std::sqrt(static_cast<double>(arms.dim()));
}

double Tracker::f_threshold(long t) const {
  return c_a0_ * std::sqrt(static_cast<double>(std::max(t, 0L)));
}

std::size_t Tracker::next_arm(const DesignState& design) {
  const long t = design.t();
  last_forced_ = t == 0 || design.min_eigenvalue() < f_threshold(t);
  if (last_forced_) {
    const auto arm = exploration_set_[forced_index_];
    forced_index_ = (forced_index_ + 1) % exploration_set_.size();
    return arm;
  }
  const auto& counts = design.counts();
  std::size_t pick = kernels::kNoIndex;
  double lag = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t a, double target) {
    const double v = static_cast<double>(counts[a]) - target;
    if (v < lag) {
      lag = v;
      pick = a;
    }
  };
  if (mode_ == TrackingMode::kAveraging && !cumulative_support_.empty()) {
    // cumulative_support_ is kept sorted so ties resolve to the lowest index.
    for (auto a : cumulative_support_) consider(a, cumulative_(static_cast<Eigen::Index>(a)));
  } else {
    const double td = static_cast<double>(t);
    for (auto a : current_.support()) consider(a, td * current_[a]);
  }
  return pick;
}

void Tracker::set_allocation(Allocation w) {
  if (w.size() != arms_->size()) throw InvalidInput("tracker: allocation has wrong length");
  current_ = std::move(w);
}

void Tracker::accumulate() {
  cumulative_ += current_.weights();
  ++rounds_;
  bool grew = false;
  for (auto a : current_.support()) {
    if (!in_cumulative_support_[a]) {
      in_cumulative_support_[a] = true;
      cumulative_support_.push_back(a);
      grew = true;
    }
  }
  if (grew) std::sort(cumulative_support_.begin(), cumulative_support_.end());
}

std::size_t Tracker::support_size() const {
  if (mode_ == TrackingMode::kAveraging && !cumulative_support_.empty()) {
    return cumulative_support_.size();
  }
  return current_.support().size();
}

bool maybe_update_allocation(Tracker& tracker, const LazySchedule& schedule,
                             const DesignState& design, const ArmSet& arms,
                             const OptimizerOptions& options) {
  if (!schedule.contains(design.t())) return false;
  const Vector& mu_hat = design.estimate();
  if (!best_arm_of(mu_hat, arms).unique) return false;
  try {
    auto result = optimize_allocation(mu_hat, arms, tracker.current(), options);
    tracker.set_allocation(std::move(result.allocation));
    return true;
  } catch (const Error&) {
    // Keep w(t-1); the run continues with the previous target.
    return false;
  }
}

namespace {

const DenseMatrix& checked_inverse(const DesignState& design, DenseMatrix& storage) {
  const auto& spec = design.spectrum();
  if (!spec.invertible(tol::kInvertible)) throw SingularDesign("design matrix is singular");
  storage = spec.pseudo_inverse();
  return storage;
}

}  // namespace

double gllr_pair(const DesignState& design, const Vector& a, const Vector& b, double eps) {
  if (a.size() != design.dim() || b.size() != design.dim()) {
    throw InvalidInput("gllr_pair: dimension mismatch");
  }
  if (!(eps >= 0.0)) throw InvalidInput("gllr_pair: eps must be non-negative");
  const Vector x = a - b;
  if (x.isZero(0.0)) throw InvalidInput("gllr_pair: arms must differ");
  DenseMatrix storage;
  const auto& inverse = checked_inverse(design, storage);
  const double shifted = design.estimate().dot(x) + eps;
  const double quad = x.dot(inverse * x);
  const double sign = shifted > 0.0 ? 1.0 : (shifted < 0.0 ? -1.0 : 0.0);
  return sign * shifted * shifted / (2.0 * quad);
}

StoppingStatistic stopping_statistic(const DesignState& design, const ArmSet& arms) {
  if (!arms.is_finite()) throw InvalidInput("stopping_statistic: finite arm set required");
  if (arms.dim() != design.dim()) throw InvalidInput("stopping_statistic: dimension mismatch");
  DenseMatrix storage;
  const auto& inverse = checked_inverse(design, storage);
  const auto a_hat = empirical_best_arm(design, arms);
  const auto term = kernels::min_gap_ratio(arms.arms(), a_hat, design.estimate(), inverse);
  return {term.value, a_hat};
}

double beta_threshold(const DesignState& design, const StopConfig& cfg, long t) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  if (!(cfg.u > 0.0) || !(cfg.c > 0.0)) throw InvalidInput("u and c must be positive");
  double log_inv_delta = -std::log(cfg.delta);
  if (cfg.inflate_delta) {
    const double tt = static_cast<double>(std::max(t, 1L));
    log_inv_delta += std::log(std::numbers::pi * std::numbers::pi * tt * tt / 6.0);
  }
  const double half_logdet = 0.5 * design.spectrum().logdet_shifted(cfg.u * cfg.c);
  return (1.0 + cfg.u) * cfg.sigma * cfg.sigma * (half_logdet + log_inv_delta);
}

bool should_stop(const DesignState& design, const StopConfig& cfg, const ArmSet& arms) {
  if (design.t() == 0 || design.min_eigenvalue() < cfg.c) return false;
  return stopping_statistic(design, arms).z > beta_threshold(design, cfg, design.t());
}

namespace detail {

RunRecord run_tracking(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                       const std::optional<Allocation>& fixed_allocation, const TraceFn& trace) {
  const auto start = std::chrono::steady_clock::now();
  const ArmSet& arms = instance.arm_set();
  if (!arms.is_finite()) throw InvalidInput("track-and-stop needs a finite arm set");
  if (cfg.max_rounds < 1) throw InvalidInput("max_rounds must be positive");

  const Allocation initial = fixed_allocation
                                 ? *fixed_allocation
                                 : Allocation::uniform_over(arms.size(), greedy_spanning_subset(arms));
  Tracker tracker(arms, fixed_allocation ? TrackingMode::kNoAveraging : cfg.mode, initial);
  DesignState design(arms.dim(), arms.size());
  RewardStream rewards(instance, seed);

  RunRecord rec;
  rec.seed = seed;
  bool stopped = false;
  while (design.t() < cfg.max_rounds) {
    const auto arm = tracker.next_arm(design);
    const double reward = rewards.sample_arm(arm);
    design.update(arms.arm(arm), arm, reward);
    const bool updated =
        !fixed_allocation &&
        maybe_update_allocation(tracker, cfg.schedule, design, arms, cfg.optimizer);
    tracker.accumulate();

    const double lambda = design.min_eigenvalue();
    double z = std::numeric_limits<double>::quiet_NaN();
    double beta = z;
    if (lambda >= cfg.stop.c) {
      z = stopping_statistic(design, arms).z;
      beta = beta_threshold(design, cfg.stop, design.t());
      stopped = z > beta;
    }
    if (trace) {
      trace({design.t(), arm, tracker.last_was_forced(), reward, lambda,
             tracker.f_threshold(design.t()), z, beta, updated});
    }
    if (stopped) break;
  }

  rec.tau = design.t();
  rec.incomplete = !stopped;
  const auto answer = empirical_best_arm(design, arms);
  rec.answer_index = answer;
  rec.correct = stopped && answer == instance.best_arm();
  rec.support_size = tracker.support_size();
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace detail

RunRecord run_lts(const Instance& instance, const LtsConfig& cfg, std::uint64_t seed,
                  const TraceFn& trace) {
  auto rec = detail::run_tracking(instance, cfg, seed, std::nullopt, trace);
  rec.algorithm = cfg.mode == TrackingMode::kAveraging ? "lts-avg" : "lts-noavg";
  return rec;
}

}  // namespace lazyts
