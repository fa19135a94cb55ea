#include "lazyts/instance.hpp"

#include <fmt/format.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "lazyts/errors.hpp"
#include "lazyts/rng.hpp"
#include "lazyts/tolerances.hpp"

namespace lazyts {

ArmSet ArmSet::finite(ArmMatrix arms) {
  if (arms.rows() < 2) throw InvalidInstance("finite arm set needs at least 2 arms");
  if (arms.cols() < 1) throw InvalidInstance("arms must have positive dimension");
  if (!arms.allFinite()) throw InvalidInstance("arm set contains non-finite entries");
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(arms);
  qr.setThreshold(1e-10);
  if (qr.rank() < arms.cols()) throw InvalidInstance("arms do not span R^d");
  ArmSet s;
  s.kind_ = ArmSetKind::kFinite;
  s.dim_ = static_cast<int>(arms.cols());
  s.max_norm_ = arms.rowwise().norm().maxCoeff();
  s.arms_ = std::move(arms);
  return s;
}

ArmSet ArmSet::sphere(int dim) {
  if (dim < 1) throw InvalidInstance("sphere dimension must be positive");
  ArmSet s;
  s.kind_ = ArmSetKind::kSphere;
  s.dim_ = dim;
  s.arms_ = ArmMatrix(0, dim);
  s.max_norm_ = 1.0;
  return s;
}

Instance::Instance(ArmSet arms, Vector mu, double sigma)
    : arms_(std::move(arms)), mu_(std::move(mu)), sigma_(sigma) {
  if (mu_.size() != arms_.dim()) throw InvalidInput("instance: mu has wrong dimension");
  if (!mu_.allFinite()) throw InvalidInput("instance: mu is not finite");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) {
    throw InvalidInput("instance: sigma must be finite and non-negative");
  }
  if (!arms_.is_finite()) {
    if (!(mu_.norm() > 0.0)) throw InvalidInstance("sphere instance needs mu != 0");
    return;
  }
  const Vector values = arms_.arms() * mu_;
  Eigen::Index best = 0;
  values.maxCoeff(&best);
  double second = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i != best) second = std::max(second, values(i));
  }
  best_arm_ = static_cast<std::size_t>(best);
  best_gap_ = values(best) - second;
  if (!(best_gap_ > tol::kBestArmGap)) throw InvalidInstance("best arm is not unique");
}

Instance gen_many_arms(int num_arms, std::uint64_t seed, double phi_std) {
  if (num_arms < 3) throw InvalidInput("gen_many_arms: need K >= 3");
  if (!(phi_std >= 0.0)) throw InvalidInput("gen_many_arms: phi_std must be non-negative");
  using std::numbers::pi;
  ArmMatrix arms(num_arms, 2);
  arms.row(0) << 1.0, 0.0;
  arms.row(1) << std::cos(3.0 * pi / 4.0), std::sin(3.0 * pi / 4.0);
  RandomStream rng(seed, StreamId::kInstance);
  for (int i = 2; i < num_arms; ++i) {
    const double angle = pi / 4.0 + phi_std * rng.next_gaussian();
    arms.row(i) << std::cos(angle), std::sin(angle);
  }
  Vector mu(2);
  mu << 1.0, 0.0;
  return Instance(ArmSet::finite(std::move(arms)), std::move(mu), 1.0);
}

std::vector<Vector> gen_orthonormal_basis(int dim) {
  if (dim < 1) throw InvalidInput("gen_orthonormal_basis: dimension must be positive");
  std::vector<Vector> basis;
  basis.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) basis.push_back(Vector::Unit(dim, i));
  return basis;
}

Instance orthonormal_instance(const Vector& mu, double sigma) {
  const auto n = mu.size();
  return Instance(ArmSet::finite(ArmMatrix::Identity(n, n)), mu, sigma);
}

namespace {

std::string format_row(const Eigen::Ref<const Vector>& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("{:.17g}", v(i));
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw, int line) {
  const std::string s = trim(raw);
  // strtod rather than from_chars: the latter lacks double support on older
  // standard libraries.
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("expected a finite number, got '" + s + "'", line);
  }
  return v;
}

long parse_int(const std::string& raw, int line) {
  const std::string s = trim(raw);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
  return v;
}

}  // namespace

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  const auto& set = instance.arm_set();
  out << set.dim() << ',' << set.size() << ',' << fmt::format("{:.17g}", instance.sigma())
      << '\n';
  for (Eigen::Index i = 0; i < set.arms().rows(); ++i) {
    out << format_row(set.arms().row(i).transpose()) << '\n';
  }
  out << "mu," << format_row(instance.mu()) << '\n';
  if (!out) throw InvalidInput("failed writing " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty instance file", 1);

  const auto header = split_csv(lines[0]);
  if (header.size() != 3) throw ParseError("header must be 'd,K,sigma'", 1);
  const long dim = parse_int(header[0], 1);
  const long num_arms = parse_int(header[1], 1);
  const double sigma = parse_double(header[2], 1);
  if (dim < 1) throw ParseError("d must be positive", 1);
  if (num_arms < 0) throw ParseError("K must be non-negative", 1);
  if (lines.size() != static_cast<std::size_t>(num_arms) + 2) {
    throw ParseError(fmt::format("expected {} arm lines and a mu line, found {} lines", num_arms,
                                 lines.size() - 1),
                     static_cast<int>(lines.size()));
  }

  ArmMatrix arms(num_arms, dim);
  for (long k = 0; k < num_arms; ++k) {
    const int line_no = static_cast<int>(k) + 2;
    const auto fields = split_csv(lines[static_cast<std::size_t>(k) + 1]);
    if (static_cast<long>(fields.size()) != dim) {
      throw ParseError(fmt::format("arm needs {} coordinates, found {}", dim, fields.size()),
                       line_no);
    }
    for (long j = 0; j < dim; ++j) arms(k, j) = parse_double(fields[j], line_no);
  }

  const int mu_line = static_cast<int>(lines.size());
  const auto mu_fields = split_csv(lines.back());
  if (mu_fields.empty() || trim(mu_fields[0]) != "mu") {
    throw ParseError("last line must start with 'mu,'", mu_line);
  }
  if (static_cast<long>(mu_fields.size()) != dim + 1) {
    throw ParseError(fmt::format("mu needs {} coordinates", dim), mu_line);
  }
  Vector mu(dim);
  for (long j = 0; j < dim; ++j) mu(j) = parse_double(mu_fields[j + 1], mu_line);

  ArmSet set = num_arms == 0 ? ArmSet::sphere(static_cast<int>(dim))
                             : ArmSet::finite(std::move(arms));
  return Instance(std::move(set), std::move(mu), sigma);
}

}  // namespace lazyts
