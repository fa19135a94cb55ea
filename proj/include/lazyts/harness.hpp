#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazyts/instance.hpp"
#include "lazyts/lts.hpp"

namespace lazyts {

inline constexpr int kResultFormatVersion = 1;

// Which instance a bench runs on.
struct InstanceSpec {
  enum class Kind { kManyArms, kOrthonormal, kFile, kSphere };
  Kind kind = Kind::kManyArms;
  int num_arms = 1000;           // many-arms
  std::uint64_t seed = 1;        // many-arms
  Vector mu;                     // orthonormal, sphere
  double sigma = 1.0;            // orthonormal, sphere
  std::filesystem::path path;    // file

  // "many_arms:K:seed", "orthonormal:m1,...,md[:sigma]",
  // "sphere:m1,...,md[:sigma]" or a path to an instance CSV.
  static InstanceSpec parse(const std::string& text);

  Instance build() const;
  // Short label used in the CSV "instance" column; never contains commas.
  std::string id() const;
};

struct BenchConfig {
  InstanceSpec instance;
  // lts-noavg, lts-avg, oracle, static-uniform; or sphere-rr alone for a
  // sphere instance.
  std::vector<std::string> algorithms = {"lts-noavg"};
  ThresholdProfile profile = ThresholdProfile::kPaperAppendix;
  LazySchedule schedule = LazySchedule::exponential();
  double delta = 0.05;
  double epsilon = 0.1;  // sphere only
  int trials = 20;
  std::uint64_t seed_base = 0;
  int jobs = 0;  // 0: OpenMP default
  long max_rounds = kDefaultMaxRounds;
  // CSV summary path; the per-run JSON goes next to it with extension .json.
  // Empty: nothing is written.
  std::filesystem::path out;
  // Wall-clock columns vary between runs, so they are off unless asked for.
  bool timing = false;

  // Throws InvalidConfig.
  void validate() const;
  static BenchConfig from_json(const nlohmann::json& doc);
  static BenchConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

struct SummaryRow {
  std::string algorithm;
  std::string instance;
  int trials = 0;
  double mean_tau = 0.0;  // over complete runs; NaN if there are none
  double std_tau = 0.0;   // sample standard deviation
  double error_rate = 0.0;
  double mean_support = 0.0;
  std::optional<double> mean_time_s;
  int incomplete = 0;
};

struct BenchResult {
  std::vector<SummaryRow> rows;
  // Grouped by algorithm in config order, then by trial index.
  std::vector<RunRecord> records;
};

// Runs every algorithm for trials seed_base + i, i < trials, aggregates and
// writes the CSV and JSON outputs when cfg.out is set.
BenchResult bench(const BenchConfig& cfg);

// Incomplete runs are excluded from all means and the error rate.
SummaryRow summarize(const std::string& algorithm, const std::string& instance,
                     const std::vector<RunRecord>& records, bool timing);

std::string csv_header();
std::string to_csv(const std::vector<SummaryRow>& rows);
nlohmann::json records_to_json(const BenchConfig& cfg, const std::vector<RunRecord>& records);

// One trial of a named algorithm; oracle_w skips recomputing w*.
RunRecord run_algorithm(const std::string& algorithm, const Instance& instance,
                        const BenchConfig& cfg, std::uint64_t seed,
                        const std::optional<Allocation>& oracle_w = std::nullopt);

LtsConfig lts_config_for(const BenchConfig& cfg, const Instance& instance, TrackingMode mode);

}  // namespace lazyts
