#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "lazyts/linalg.hpp"

namespace lazyts {

enum class ArmSetKind { kFinite, kSphere };

// The action space: either K arms stored row-wise, or the unit sphere S^{d-1}.
class ArmSet {
 public:
  // Throws InvalidInstance unless K >= 2, all entries are finite and the
  // arms span R^d.
  static ArmSet finite(ArmMatrix arms);
  static ArmSet sphere(int dim);

  ArmSetKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == ArmSetKind::kFinite; }
  int dim() const { return dim_; }
  // Number of arms; 0 for the sphere.
  std::size_t size() const { return static_cast<std::size_t>(arms_.rows()); }
  const ArmMatrix& arms() const { return arms_; }
  Vector arm(std::size_t i) const { return arms_.row(static_cast<Eigen::Index>(i)).transpose(); }
  // L = max_a ||a||, 1 for the sphere.
  double max_norm() const { return max_norm_; }

 private:
  ArmSet() = default;

  ArmSetKind kind_ = ArmSetKind::kFinite;
  int dim_ = 0;
  ArmMatrix arms_;
  double max_norm_ = 0.0;
};

// Ground truth for simulation: r = mu^T a + sigma * N(0, 1).
class Instance {
 public:
  // Throws InvalidInstance when the best arm is not unique (finite kind) or
  // mu = 0 (sphere kind), InvalidInput on dimension mismatch or sigma < 0.
  Instance(ArmSet arms, Vector mu, double sigma);

  const ArmSet& arm_set() const { return arms_; }
  const Vector& mu() const { return mu_; }
  double sigma() const { return sigma_; }
  int dim() const { return arms_.dim(); }
  // Index of a*_mu; only meaningful for finite arm sets.
  std::size_t best_arm() const { return best_arm_; }
  // mu^T a* - max_{a != a*} mu^T a for finite sets.
  double best_gap() const { return best_gap_; }

 private:
  ArmSet arms_;
  Vector mu_;
  double sigma_;
  std::size_t best_arm_ = 0;
  double best_gap_ = 0.0;
};

// Standard deviation of the angle perturbations in the many-arms family.
inline constexpr double kManyArmsPhiStd = 0.09;

// The many-arms benchmark: d = 2, arms (1,0), e^{i 3pi/4} and K-2 arms
// e^{i(pi/4 + phi_i)} with phi_i ~ N(0, phi_std^2); mu = (1,0), sigma = 1.
Instance gen_many_arms(int num_arms, std::uint64_t seed, double phi_std = kManyArmsPhiStd);

// Standard basis e_1..e_d.
std::vector<Vector> gen_orthonormal_basis(int dim);

// Finite instance whose arms are the standard basis of R^d.
Instance orthonormal_instance(const Vector& mu, double sigma = 1.0);

// Instance CSV:
//   line 1       d,K,sigma          (K = 0 denotes the unit sphere)
//   K lines      a_1,...,a_d
//   last line    mu,m_1,...,m_d
// Floats are written with 17 significant digits. Errors raise ParseError
// carrying the offending line, or InvalidInstance for model violations.
void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace lazyts
