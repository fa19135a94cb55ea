#pragma once

#include <cstddef>
#include <limits>

#include "lazyts/linalg.hpp"

// Sweeps over the arm set. Every kernel has a serial reference version and
// an OpenMP version that returns bitwise-identical results: the reductions
// are exact (min / max with lowest-index tie-breaking) and per-arm values
// are computed by the same inline code in both. The unqualified entry
// points pick the OpenMP version for large arm sets when not already
// running inside a parallel region.
namespace lazyts::kernels {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct TopTwo {
  std::size_t index = kNoIndex;  // lowest index attaining the maximum
  double best = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();  // max over the other arms
};

struct ArgMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = kNoIndex;
};

// Arm sets at least this large are swept in parallel by the dispatchers.
inline constexpr std::size_t kParallelThreshold = 2048;

namespace serial {
TopTwo top_two_inner(const ArmMatrix& arms, const Vector& theta);
// min over b != ref of (theta^T x)^2 / (2 x^T inverse x), x = a_ref - a_b.
// Terms with x = 0 count as 0.
ArgMin min_gap_ratio(const ArmMatrix& arms, std::size_t ref, const Vector& theta,
                     const DenseMatrix& inverse);
// out_b = (v^T a_b)^2
void squared_projections(const ArmMatrix& arms, const Vector& v, Vector& out);
}  // namespace serial

namespace omp {
TopTwo top_two_inner(const ArmMatrix& arms, const Vector& theta);
ArgMin min_gap_ratio(const ArmMatrix& arms, std::size_t ref, const Vector& theta,
                     const DenseMatrix& inverse);
void squared_projections(const ArmMatrix& arms, const Vector& v, Vector& out);
}  // namespace omp

TopTwo top_two_inner(const ArmMatrix& arms, const Vector& theta);
ArgMin min_gap_ratio(const ArmMatrix& arms, std::size_t ref, const Vector& theta,
                     const DenseMatrix& inverse);
void squared_projections(const ArmMatrix& arms, const Vector& v, Vector& out);

}  // namespace lazyts::kernels
