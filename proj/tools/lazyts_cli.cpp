// lazyts command-line front end.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lazyts/allocation.hpp"
#include "lazyts/baselines.hpp"
#include "lazyts/errors.hpp"
#include "lazyts/harness.hpp"
#include "lazyts/instance.hpp"
#include "lazyts/lts.hpp"
#include "lazyts/sphere.hpp"

namespace {

using namespace lazyts;

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

// Flags shared by run and bench.
struct CommonFlags {
  std::string instance;
  double delta = 0.05;
  std::uint64_t seed = 0;
  std::string schedule = "exp";
  std::string mode = "noavg";
  std::string profile = "paper-appendix";
  long max_rounds = kDefaultMaxRounds;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--instance", f.instance,
                  "instance CSV, many_arms:K:seed, orthonormal:m1,..,md[:sigma] or "
                  "sphere:m1,..,md[:sigma]");
  cmd->add_option("--delta", f.delta, "risk level in (0,1)")->capture_default_str();
  cmd->add_option("--schedule", f.schedule, "exp, period:P or every")->capture_default_str();
  cmd->add_option("--mode", f.mode, "avg or noavg")
      ->check(CLI::IsMember({"avg", "noavg"}))
      ->capture_default_str();
  cmd->add_option("--profile", f.profile, "paper-main or paper-appendix")
      ->check(CLI::IsMember({"paper-main", "paper-appendix"}))
      ->capture_default_str();
  cmd->add_option("--max-rounds", f.max_rounds, "safety cap on rounds")->capture_default_str();
}

std::string fmt_double(double x) { return std::isnan(x) ? "NA" : fmt::format("{:.10g}", x); }

int cmd_gen_instance(int num_arms, std::uint64_t seed, double phi_std, const std::string& out) {
  const Instance inst = gen_many_arms(num_arms, seed, phi_std);
  save_instance(inst, out);
  fmt::print("wrote {} (d={}, K={}, best arm {})\n", out, inst.dim(), inst.arm_set().size(),
             inst.best_arm());
  return 0;
}

int cmd_run(const CommonFlags& f, const std::string& algorithm, double epsilon) {
  if (f.instance.empty()) throw InvalidConfig("--instance is required");
  BenchConfig cfg;
  cfg.instance = InstanceSpec::parse(f.instance);
  cfg.delta = f.delta;
  cfg.epsilon = epsilon;
  cfg.schedule = LazySchedule::parse(f.schedule);
  cfg.profile = parse_threshold_profile(f.profile);
  cfg.max_rounds = f.max_rounds;
  const Instance inst = cfg.instance.build();

  std::string algo = algorithm;
  if (algo.empty()) {
    algo = !inst.arm_set().is_finite() ? "sphere-rr" : f.mode == "avg" ? "lts-avg" : "lts-noavg";
  }
  cfg.algorithms = {algo};
  cfg.validate();

  RunRecord rec;
  if (algo == "lts-avg" || algo == "lts-noavg") {
    const auto lts = lts_config_for(cfg, inst, parse_tracking_mode(algo.substr(4)));
    fmt::print("t,arm,forced,reward,lambda_min,f,z,beta,updated\n");
    rec = run_lts(inst, lts, f.seed, [](const RoundTrace& r) {
      fmt::print("{},{},{},{},{},{},{},{},{}\n", r.t, r.arm, r.forced ? 1 : 0,
                 fmt_double(r.reward), fmt_double(r.min_eigenvalue), fmt_double(r.f),
                 fmt_double(r.z), fmt_double(r.beta), r.updated ? 1 : 0);
    });
  } else {
    rec = run_algorithm(algo, inst, cfg, f.seed);
  }
  fmt::print("algorithm={} seed={} tau={} correct={} incomplete={} support={}", rec.algorithm,
             rec.seed, rec.tau, rec.correct ? 1 : 0, rec.incomplete ? 1 : 0, rec.support_size);
  if (rec.answer_index) fmt::print(" answer={}", *rec.answer_index);
  if (rec.answer_direction.size() > 0) {
    fmt::print(" answer=(");
    for (Eigen::Index i = 0; i < rec.answer_direction.size(); ++i) {
      fmt::print("{}{}", i ? "," : "", fmt_double(rec.answer_direction(i)));
    }
    fmt::print(")");
  }
  fmt::print("\n");
  return 0;
}

int cmd_bench(const std::string& config_path, const CommonFlags& f, CLI::App* cmd, int trials,
              int jobs, const std::string& out, const std::vector<std::string>& algorithms) {
  BenchConfig cfg;
  if (!config_path.empty()) {
    cfg = BenchConfig::load(config_path);
  } else if (f.instance.empty()) {
    throw InvalidConfig("bench needs --config or --instance");
  }
  if (!f.instance.empty()) cfg.instance = InstanceSpec::parse(f.instance);
  if (cmd->count("--delta")) cfg.delta = f.delta;
  if (cmd->count("--seed")) cfg.seed_base = f.seed;
  if (cmd->count("--schedule")) cfg.schedule = LazySchedule::parse(f.schedule);
  if (cmd->count("--profile")) cfg.profile = parse_threshold_profile(f.profile);
  if (cmd->count("--max-rounds")) cfg.max_rounds = f.max_rounds;
  if (cmd->count("--mode")) cfg.algorithms = {"lts-" + f.mode};
  if (!algorithms.empty()) cfg.algorithms = algorithms;
  if (cmd->count("--trials")) cfg.trials = trials;
  if (cmd->count("--jobs")) cfg.jobs = jobs;
  if (cmd->count("--out")) cfg.out = out;
  if (cmd->count("--timing")) cfg.timing = true;
  const auto result = bench(cfg);
  std::cout << to_csv(result.rows);
  return 0;
}

int cmd_lower_bound(const std::string& instance, double delta, double epsilon) {
  if (instance.empty()) throw InvalidConfig("--instance is required");
  const Instance inst = InstanceSpec::parse(instance).build();
  if (inst.arm_set().is_finite()) {
    const double t_star = characteristic_time(inst.mu(), inst.arm_set());
    fmt::print("T* = {:.6f}\n", t_star);
    fmt::print("lower bound (delta={}) = {:.6f}\n", delta,
               sample_complexity_lower_bound(inst, delta));
  } else {
    const auto cfg = SphereConfig::make(inst.dim(), epsilon, delta, inst.sigma());
    fmt::print("sphere lower bound (epsilon={}, delta={}) = {:.6f}\n", epsilon, delta,
               sphere_lower_bound(inst, cfg));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lazy Track-and-Stop for best-arm identification in linear bandits"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-instance", "write a many-arms instance as CSV");
  int gen_k = 1000;
  std::uint64_t gen_seed = 1;
  double gen_phi = kManyArmsPhiStd;
  std::string gen_out;
  gen->add_option("-K,--arms", gen_k, "number of arms")->capture_default_str();
  gen->add_option("--seed", gen_seed, "instance seed")->capture_default_str();
  gen->add_option("--phi-std", gen_phi, "std of the angle perturbation")->capture_default_str();
  gen->add_option("--out", gen_out, "output CSV")->required();

  auto* run = app.add_subcommand("run", "single trial with a per-round trace");
  CommonFlags run_flags;
  std::string run_algo;
  double run_eps = 0.1;
  add_common(run, run_flags);
  run->add_option("--seed", run_flags.seed, "reward seed")->capture_default_str();
  run->add_option("--algorithm", run_algo, "lts-noavg, lts-avg, oracle, static-uniform or sphere-rr")
      ->check(CLI::IsMember({"lts-noavg", "lts-avg", "oracle", "static-uniform", "sphere-rr"}));
  run->add_option("--epsilon", run_eps, "sphere accuracy")->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "batch of trials, CSV summary and JSON records");
  CommonFlags bench_flags;
  std::string bench_config;
  int bench_trials = 20;
  int bench_jobs = 0;
  std::string bench_out;
  std::vector<std::string> bench_algos;
  add_common(bench_cmd, bench_flags);
  bench_cmd->add_option("--config", bench_config, "JSON config file")->check(CLI::ExistingFile);
  bench_cmd->add_option("--seed", bench_flags.seed, "seed base");
  bench_cmd->add_option("--trials", bench_trials, "trials per algorithm");
  bench_cmd->add_option("--jobs", bench_jobs, "worker threads, 0 for all");
  bench_cmd->add_option("--out", bench_out, "summary CSV path");
  bench_cmd->add_option("--algorithms", bench_algos, "comma-separated algorithms to run")
      ->delimiter(',');
  bench_cmd->add_flag("--timing", "report wall-clock means");

  auto* lb = app.add_subcommand("lower-bound", "print T* and the sample-complexity lower bound");
  std::string lb_instance;
  double lb_delta = 0.05;
  double lb_eps = 0.1;
  lb->add_option("--instance", lb_instance, "instance")->required();
  lb->add_option("--delta", lb_delta, "risk level")->capture_default_str();
  lb->add_option("--epsilon", lb_eps, "sphere accuracy")->capture_default_str();

  auto* sb = app.add_subcommand("sphere-bench", "batch of round-robin runs on the unit sphere");
  int sb_d = 4;
  double sb_norm = 1.0;
  double sb_sigma = 0.2;
  double sb_eps = 0.1;
  double sb_delta = 0.05;
  int sb_trials = 200;
  std::uint64_t sb_seed = 0;
  int sb_jobs = 0;
  std::string sb_out;
  long sb_max = kDefaultMaxRounds;
  sb->add_option("-d,--dim", sb_d, "dimension")->capture_default_str();
  sb->add_option("--norm", sb_norm, "||mu||, mu along e1")->capture_default_str();
  sb->add_option("--sigma", sb_sigma, "noise std")->capture_default_str();
  sb->add_option("--epsilon", sb_eps, "accuracy")->capture_default_str();
  sb->add_option("--delta", sb_delta, "risk level")->capture_default_str();
  sb->add_option("--trials", sb_trials, "trials")->capture_default_str();
  sb->add_option("--seed", sb_seed, "seed base")->capture_default_str();
  sb->add_option("--jobs", sb_jobs, "worker threads, 0 for all");
  sb->add_option("--out", sb_out, "summary CSV path");
  sb->add_option("--max-rounds", sb_max, "safety cap on rounds")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_instance(gen_k, gen_seed, gen_phi, gen_out);
    if (run->parsed()) return cmd_run(run_flags, run_algo, run_eps);
    if (bench_cmd->parsed()) {
      return cmd_bench(bench_config, bench_flags, bench_cmd, bench_trials, bench_jobs, bench_out,
                       bench_algos);
    }
    if (lb->parsed()) return cmd_lower_bound(lb_instance, lb_delta, lb_eps);
    if (sb->parsed()) {
      if (sb_d < 2) throw InvalidConfig("--dim must be >= 2");
      BenchConfig cfg;
      cfg.instance.kind = InstanceSpec::Kind::kSphere;
      cfg.instance.mu = Vector::Zero(sb_d);
      cfg.instance.mu(0) = sb_norm;
      cfg.instance.sigma = sb_sigma;
      cfg.algorithms = {"sphere-rr"};
      cfg.epsilon = sb_eps;
      cfg.delta = sb_delta;
      cfg.trials = sb_trials;
      cfg.seed_base = sb_seed;
      cfg.jobs = sb_jobs;
      cfg.out = sb_out;
      cfg.max_rounds = sb_max;
      std::cout << to_csv(bench(cfg).rows);
      return 0;
    }
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
