#pragma once

// Numerical tolerances shared across modules. Tests reference these
// directly rather than repeating literals.
namespace lazyts::tol {

// |m_ij - m_ji| allowed in a SymMatrix.
inline constexpr double kSymmetry = 1e-10;
// Eigenvalues below kPinvCutoff * lambda_max are dropped by the pseudo-inverse.
inline constexpr double kPinvCutoff = 1e-10;
// A design is treated as invertible when lambda_min > kInvertible * lambda_max.
inline constexpr double kInvertible = 1e-12;
// |lambda_min| below this fraction of the spectral radius is reported as 0.
inline constexpr double kRankDeficient = 1e-12;
// Required margin between the top two mean rewards for a unique best arm.
inline constexpr double kBestArmGap = 1e-12;
// Weights above this count as support of an allocation.
inline constexpr double kSupportCutoff = 1e-9;
// Allowed deviation of a user-supplied allocation's sum from 1.
inline constexpr double kSimplexSum = 1e-12;

}  // namespace lazyts::tol
