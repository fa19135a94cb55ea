#include "lazyts/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "lazyts/baselines.hpp"
#include "lazyts/errors.hpp"
#include "lazyts/sphere.hpp"

namespace lazyts {

namespace {

using nlohmann::json;

std::string kind_name(InstanceSpec::Kind kind) {
  switch (kind) {
    case InstanceSpec::Kind::kManyArms: return "many_arms";
    case InstanceSpec::Kind::kOrthonormal: return "orthonormal";
    case InstanceSpec::Kind::kFile: return "file";
    case InstanceSpec::Kind::kSphere: return "sphere";
  }
  return "";
}

InstanceSpec::Kind parse_kind(const std::string& name) {
  if (name == "many_arms") return InstanceSpec::Kind::kManyArms;
  if (name == "orthonormal") return InstanceSpec::Kind::kOrthonormal;
  if (name == "file") return InstanceSpec::Kind::kFile;
  if (name == "sphere") return InstanceSpec::Kind::kSphere;
  throw InvalidConfig("unknown instance type '" + name + "'");
}

bool is_known_algorithm(const std::string& name) {
  return name == "lts-noavg" || name == "lts-avg" || name == "oracle" ||
         name == "static-uniform" || name == "sphere-rr";
}

Vector vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

std::vector<double> vector_to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::string format_number(double x) {
  if (!std::isfinite(x)) return "NA";
  return fmt::format("{:.6f}", x);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidConfig("not a number: '" + text + "'");
  return x;
}

}  // namespace

InstanceSpec InstanceSpec::parse(const std::string& text) {
  InstanceSpec spec;
  const auto parts = split(text, ':');
  const std::string& head = parts.front();
  if (head == "many_arms") {
    if (parts.size() != 3) throw InvalidConfig("expected many_arms:K:seed");
    spec.kind = Kind::kManyArms;
    spec.num_arms = static_cast<int>(parse_double(parts[1]));
    spec.seed = static_cast<std::uint64_t>(parse_double(parts[2]));
    return spec;
  }
  if (head == "orthonormal" || head == "sphere") {
    if (parts.size() < 2 || parts.size() > 3) {
      throw InvalidConfig("expected " + head + ":m1,...,md[:sigma]");
    }
    spec.kind = head == "sphere" ? Kind::kSphere : Kind::kOrthonormal;
    const auto values = split(parts[1], ',');
    spec.mu.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
      spec.mu(static_cast<Eigen::Index>(i)) = parse_double(values[i]);
    }
    if (parts.size() == 3) spec.sigma = parse_double(parts[2]);
    return spec;
  }
  spec.kind = Kind::kFile;
  spec.path = text;
  return spec;
}

Instance InstanceSpec::build() const {
  switch (kind) {
    case Kind::kManyArms: return gen_many_arms(num_arms, seed);
    case Kind::kOrthonormal: return orthonormal_instance(mu, sigma);
    case Kind::kFile: return load_instance(path);
    case Kind::kSphere:
      return Instance(ArmSet::sphere(static_cast<int>(mu.size())), mu, sigma);
  }
  throw InvalidConfig("unknown instance kind");
}

std::string InstanceSpec::id() const {
  switch (kind) {
    case Kind::kManyArms: return fmt::format("many_arms-K{}-s{}", num_arms, seed);
    case Kind::kOrthonormal: return fmt::format("orthonormal-d{}", mu.size());
    case Kind::kFile: return path.stem().string();
    case Kind::kSphere: return fmt::format("sphere-d{}", mu.size());
  }
  return "";
}

void BenchConfig::validate() const {
  if (trials < 1) throw InvalidConfig("trials must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidConfig("delta must lie in (0, 1)");
  if (jobs < 0) throw InvalidConfig("jobs must be >= 0");
  if (max_rounds < 1) throw InvalidConfig("max_rounds must be >= 1");
  if (algorithms.empty()) throw InvalidConfig("no algorithms given");
  const bool sphere = instance.kind == InstanceSpec::Kind::kSphere;
  for (const auto& name : algorithms) {
    if (!is_known_algorithm(name)) throw InvalidConfig("unknown algorithm '" + name + "'");
    if ((name == "sphere-rr") != sphere) {
      throw InvalidConfig("algorithm '" + name + "' does not fit instance type " +
                          kind_name(instance.kind));
    }
  }
  if (sphere && !(epsilon > 0.0)) throw InvalidConfig("epsilon must be positive");
  if (instance.kind == InstanceSpec::Kind::kManyArms && instance.num_arms < 3) {
    throw InvalidConfig("many_arms needs K >= 3");
  }
  if ((instance.kind == InstanceSpec::Kind::kOrthonormal ||
       instance.kind == InstanceSpec::Kind::kSphere) &&
      instance.mu.size() == 0) {
    throw InvalidConfig("instance mu missing");
  }
  if (out.extension() == ".json") throw InvalidConfig("out must not end in .json");
  if (instance.kind == InstanceSpec::Kind::kFile && instance.path.empty()) {
    throw InvalidConfig("instance path missing");
  }
}

BenchConfig BenchConfig::from_json(const json& doc) {
  BenchConfig cfg;
  try {
    if (!doc.is_object()) throw InvalidConfig("config must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
      static const std::vector<std::string> known = {
          "instance", "algorithms", "profile", "schedule", "delta",  "epsilon",
          "trials",   "seed_base",  "jobs",    "max_rounds", "out", "timing"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw InvalidConfig("unknown config key '" + key + "'");
      }
    }
    const json& inst = doc.at("instance");
    cfg.instance.kind = parse_kind(inst.at("type").get<std::string>());
    if (inst.contains("K")) cfg.instance.num_arms = inst["K"].get<int>();
    if (inst.contains("seed")) cfg.instance.seed = inst["seed"].get<std::uint64_t>();
    if (inst.contains("mu")) cfg.instance.mu = vector_from_json(inst["mu"]);
    if (inst.contains("sigma")) cfg.instance.sigma = inst["sigma"].get<double>();
    if (inst.contains("path")) cfg.instance.path = inst["path"].get<std::string>();
    if (doc.contains("algorithms")) {
      cfg.algorithms = doc["algorithms"].get<std::vector<std::string>>();
    } else if (cfg.instance.kind == InstanceSpec::Kind::kSphere) {
      cfg.algorithms = {"sphere-rr"};
    }
    if (doc.contains("profile")) {
      cfg.profile = parse_threshold_profile(doc["profile"].get<std::string>());
    }
    if (doc.contains("schedule")) {
      cfg.schedule = LazySchedule::parse(doc["schedule"].get<std::string>());
    }
    cfg.delta = doc.value("delta", cfg.delta);
    cfg.epsilon = doc.value("epsilon", cfg.epsilon);
    cfg.trials = doc.value("trials", cfg.trials);
    cfg.seed_base = doc.value("seed_base", cfg.seed_base);
    cfg.jobs = doc.value("jobs", cfg.jobs);
    cfg.max_rounds = doc.value("max_rounds", cfg.max_rounds);
    if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
    cfg.timing = doc.value("timing", cfg.timing);
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bad config: ") + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidConfig(e.what());
  }
  cfg.validate();
  return cfg;
}

BenchConfig BenchConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

json BenchConfig::to_json() const {
  json inst = {{"type", kind_name(instance.kind)}};
  switch (instance.kind) {
    case InstanceSpec::Kind::kManyArms:
      inst["K"] = instance.num_arms;
      inst["seed"] = instance.seed;
      break;
    case InstanceSpec::Kind::kOrthonormal:
    case InstanceSpec::Kind::kSphere:
      inst["mu"] = vector_to_std(instance.mu);
      inst["sigma"] = instance.sigma;
      break;
    case InstanceSpec::Kind::kFile:
      inst["path"] = instance.path.string();
      break;
  }
  json doc = {{"instance", inst},
              {"algorithms", algorithms},
              {"profile", std::string(to_string(profile))},
              {"schedule", schedule.name()},
              {"delta", delta},
              {"trials", trials},
              {"seed_base", seed_base},
              {"max_rounds", max_rounds},
              {"timing", timing}};
  if (instance.kind == InstanceSpec::Kind::kSphere) doc["epsilon"] = epsilon;
  return doc;
}

LtsConfig lts_config_for(const BenchConfig& cfg, const Instance& instance, TrackingMode mode) {
  LtsConfig lts;
  lts.stop = StopConfig::for_profile(cfg.profile, instance, cfg.delta);
  lts.schedule = cfg.schedule;
  lts.mode = mode;
  lts.max_rounds = cfg.max_rounds;
  return lts;
}

RunRecord run_algorithm(const std::string& algorithm, const Instance& instance,
                        const BenchConfig& cfg, std::uint64_t seed,
                        const std::optional<Allocation>& oracle_w) {
  RunRecord rec;
  if (algorithm == "lts-noavg") {
    rec = run_lts(instance, lts_config_for(cfg, instance, TrackingMode::kNoAveraging), seed);
  } else if (algorithm == "lts-avg") {
    rec = run_lts(instance, lts_config_for(cfg, instance, TrackingMode::kAveraging), seed);
  } else if (algorithm == "oracle") {
    rec = run_oracle_tracking(
        instance, lts_config_for(cfg, instance, TrackingMode::kNoAveraging), seed, oracle_w);
  } else if (algorithm == "static-uniform") {
    rec = run_static(instance, lts_config_for(cfg, instance, TrackingMode::kNoAveraging), seed,
                     Allocation::uniform(instance.arm_set().size()));
  } else if (algorithm == "sphere-rr") {
    const auto sphere_cfg =
        SphereConfig::make(instance.dim(), cfg.epsilon, cfg.delta, instance.sigma());
    rec = run_sphere(instance, sphere_cfg, seed, cfg.max_rounds);
  } else {
    throw InvalidConfig("unknown algorithm '" + algorithm + "'");
  }
  rec.algorithm = algorithm;
  return rec;
}

SummaryRow summarize(const std::string& algorithm, const std::string& instance,
                     const std::vector<RunRecord>& records, bool timing) {
  SummaryRow row;
  row.algorithm = algorithm;
  row.instance = instance;
  row.trials = static_cast<int>(records.size());
  double sum_tau = 0.0;
  double sum_support = 0.0;
  double sum_time = 0.0;
  int complete = 0;
  int errors = 0;
  for (const auto& r : records) {
    if (r.incomplete) {
      ++row.incomplete;
      continue;
    }
    ++complete;
    sum_tau += static_cast<double>(r.tau);
    sum_support += static_cast<double>(r.support_size);
    sum_time += r.wall_time_s;
    if (!r.correct) ++errors;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (complete == 0) {
    row.mean_tau = row.std_tau = row.error_rate = row.mean_support = nan;
    if (timing) row.mean_time_s = nan;
    return row;
  }
  row.mean_tau = sum_tau / complete;
  double ss = 0.0;
  for (const auto& r : records) {
    if (r.incomplete) continue;
    const double dev = static_cast<double>(r.tau) - row.mean_tau;
    ss += dev * dev;
  }
  row.std_tau = complete > 1 ? std::sqrt(ss / (complete - 1)) : 0.0;
  row.error_rate = static_cast<double>(errors) / complete;
  row.mean_support = sum_support / complete;
  if (timing) row.mean_time_s = sum_time / complete;
  return row;
}

std::string csv_header() {
  return "algorithm,instance,trials,mean_tau,std_tau,error_rate,mean_support,mean_time_s,"
         "incomplete";
}

std::string to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.algorithm, r.instance, r.trials,
                       format_number(r.mean_tau), format_number(r.std_tau),
                       format_number(r.error_rate), format_number(r.mean_support),
                       r.mean_time_s ? format_number(*r.mean_time_s) : "NA", r.incomplete);
  }
  return out;
}

json records_to_json(const BenchConfig& cfg, const std::vector<RunRecord>& records) {
  json runs = json::array();
  for (const auto& r : records) {
    json j = {{"algorithm", r.algorithm},
              {"instance", r.instance_id},
              {"seed", r.seed},
              {"tau", r.tau},
              {"correct", r.correct},
              {"support_size", r.support_size},
              {"incomplete", r.incomplete}};
    if (r.answer_index) j["answer_index"] = *r.answer_index;
    if (r.answer_direction.size() > 0) j["answer_direction"] = vector_to_std(r.answer_direction);
    if (cfg.timing) j["wall_time_s"] = r.wall_time_s;
    runs.push_back(std::move(j));
  }
  return {{"format_version", kResultFormatVersion}, {"config", cfg.to_json()}, {"runs", runs}};
}

BenchResult bench(const BenchConfig& cfg) {
  cfg.validate();
  const Instance instance = cfg.instance.build();
  const std::string instance_id = cfg.instance.id();
  const auto n = static_cast<std::size_t>(cfg.trials);

  BenchResult result;
  for (const auto& algorithm : cfg.algorithms) {
    std::optional<Allocation> oracle_w;
    if (algorithm == "oracle") oracle_w = oracle_allocation(instance);

    std::vector<RunRecord> records(n);
    std::vector<std::exception_ptr> failures(n);
    const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      try {
        records[i] = run_algorithm(algorithm, instance, cfg, cfg.seed_base + i, oracle_w);
        records[i].instance_id = instance_id;
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
    result.rows.push_back(summarize(algorithm, instance_id, records, cfg.timing));
    for (auto& r : records) result.records.push_back(std::move(r));
  }

  if (!cfg.out.empty()) {
    if (cfg.out.has_parent_path()) std::filesystem::create_directories(cfg.out.parent_path());
    {
      std::ofstream csv(cfg.out, std::ios::binary);
      if (!csv) throw Error("cannot write " + cfg.out.string());
      csv << to_csv(result.rows);
    }
    auto json_path = cfg.out;
    json_path.replace_extension(".json");
    std::ofstream js(json_path, std::ios::binary);
    if (!js) throw Error("cannot write " + json_path.string());
    js << records_to_json(cfg, result.records).dump(2) << "\n";
  }
  return result;
}

}  // namespace lazyts
