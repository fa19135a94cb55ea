#include "lazyts/kernels.hpp"

#include <omp.h>

#include <vector>

#include "lazyts/errors.hpp"

namespace lazyts::kernels {

namespace {

inline double inner(const double* a, const double* theta, Eigen::Index d) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) s += a[j] * theta[j];
  return s;
}

inline void push_top_two(TopTwo& acc, double v, std::size_t i) {
  if (acc.index == kNoIndex || v > acc.best) {
    acc.second = acc.best;
    acc.best = v;
    acc.index = i;
  } else if (v > acc.second) {
    acc.second = v;
  }
}

// `later` covers higher arm indices than `acc`.
inline void merge_top_two(TopTwo& acc, const TopTwo& later) {
  if (later.index == kNoIndex) return;
  if (acc.index == kNoIndex) {
    acc = later;
    return;
  }
  if (later.best > acc.best) {
    acc.second = std::max(acc.best, later.second);
    acc.best = later.best;
    acc.index = later.index;
  } else {
    acc.second = std::max(acc.second, later.best);
  }
}

// Scratch holds x = a_ref - a_b.
inline double gap_ratio(const double* ref, const double* b, const double* theta,
                        const double* inv, Eigen::Index d, double* x) {
  double num = 0.0;
  bool zero = true;
  for (Eigen::Index j = 0; j < d; ++j) {
    x[j] = ref[j] - b[j];
    zero = zero && x[j] == 0.0;
    num += theta[j] * x[j];
  }
  if (zero) return 0.0;
  // inverse is column-major and symmetric.
  double quad = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) col += inv[j * d + i] * x[i];
    quad += x[j] * col;
  }
  if (num == 0.0) return 0.0;
  return num * num / (2.0 * quad);
}

inline void push_min(ArgMin& acc, double v, std::size_t i) {
  if (v < acc.value || acc.index == kNoIndex) {
    acc.value = v;
    acc.index = i;
  }
}

void check_dims(const ArmMatrix& arms, const Vector& v) {
  if (arms.cols() != v.size()) throw InvalidInput("kernel: dimension mismatch");
}

void check_gap_args(const ArmMatrix& arms, std::size_t ref, const Vector& theta,
                    const DenseMatrix& inverse) {
  check_dims(arms, theta);
  if (inverse.rows() != arms.cols() || inverse.cols() != arms.cols()) {
    throw InvalidInput("kernel: inverse has wrong shape");
  }
  if (ref >= static_cast<std::size_t>(arms.rows())) throw InvalidInput("kernel: bad reference arm");
}

bool use_parallel(const ArmMatrix& arms) {
  return static_cast<std::size_t>(arms.rows()) >= kParallelThreshold && !omp_in_parallel() &&
         omp_get_max_threads() > 1;
}

}  // namespace

namespace serial {

TopTwo top_two_inner(const ArmMatrix& arms, const Vector& theta) {
  check_dims(arms, theta);
  const Eigen::Index d = arms.cols();
  TopTwo acc;
  for (Eigen::Index i = 0; i < arms.rows(); ++i) {
    push_top_two(acc, inner(arms.data() + i * d, theta.data(), d), static_cast<std::size_t>(i));
  }
  return acc;
}

ArgMin min_gap_ratio(const ArmMatrix& arms, std::size_t ref, const Vector& theta,
                     const DenseMatrix& inverse) {
  check_gap_args(arms, ref, theta, inverse);
  const Eigen::Index d = arms.cols();
  const double* ref_row = arms.data() + static_cast<Eigen::Index>(ref) * d;
  std::vector<double> x(static_cast<std::size_t>(d));
  ArgMin acc;
  for (Eigen::Index i = 0; i < arms.rows(); ++i) {
    if (static_cast<std::size_t>(i) == ref) continue;
    const double v =
        gap_ratio(ref_row, arms.data() + i * d, theta.data(), inverse.data(), d, x.data());
    push_min(acc, v, static_cast<std::size_t>(i));
  }
  return acc;
}

void squared_projections(const ArmMatrix& arms, const Vector& v, Vector& out) {
  check_dims(arms, v);
  const Eigen::Index d = arms.cols();
  out.resize(arms.rows());
  for (Eigen::Index i = 0; i < arms.rows(); ++i) {
    const double p = inner(arms.data() + i * d, v.data(), d);
    out(i) = p * p;
  }
}

}  // namespace serial

namespace omp {

TopTwo top_two_inner(const ArmMatrix& arms, const Vector& theta) {
  check_dims(arms, theta);
  const Eigen::Index d = arms.cols();
  const Eigen::Index n = arms.rows();
  std::vector<TopTwo> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    TopTwo local;
    // schedule(static) hands out contiguous blocks in thread order, which
    // keeps the ordered merge below equivalent to a serial sweep.
#pragma omp for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
      push_top_two(local, inner(arms.data() + i * d, theta.data(), d), static_cast<std::size_t>(i));
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  TopTwo acc;
  for (const auto& p : partial) merge_top_two(acc, p);
  return acc;
}

ArgMin min_gap_ratio(const ArmMatrix& arms, std::size_t ref, const Vector& theta,
                     const DenseMatrix& inverse) {
  check_gap_args(arms, ref, theta, inverse);
  const Eigen::Index d = arms.cols();
  const Eigen::Index n = arms.rows();
  const double* ref_row = arms.data() + static_cast<Eigen::Index>(ref) * d;
  std::vector<ArgMin> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    std::vector<double> x(static_cast<std::size_t>(d));
    ArgMin local;
#pragma omp for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(i) == ref) continue;
      const double v =
          gap_ratio(ref_row, arms.data() + i * d, theta.data(), inverse.data(), d, x.data());
      push_min(local, v, static_cast<std::size_t>(i));
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  ArgMin acc;
  for (const auto& p : partial) {
    if (p.index != kNoIndex && (acc.index == kNoIndex || p.value < acc.value)) acc = p;
  }
  return acc;
}

void squared_projections(const ArmMatrix& arms, const Vector& v, Vector& out) {
  check_dims(arms, v);
  const Eigen::Index d = arms.cols();
  const Eigen::Index n = arms.rows();
  out.resize(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = inner(arms.data() + i * d, v.data(), d);
    out(i) = p * p;
  }
}

}  // namespace omp

TopTwo top_two_inner(const ArmMatrix& arms, const Vector& theta) {
  return use_parallel(arms) ? omp::top_two_inner(arms, theta) : serial::top_two_inner(arms, theta);
}

ArgMin min_gap_ratio(const ArmMatrix& arms, std::size_t ref, const Vector& theta,
                     const DenseMatrix& inverse) {
  return use_parallel(arms) ? omp::min_gap_ratio(arms, ref, theta, inverse)
                            : serial::min_gap_ratio(arms, ref, theta, inverse);
}

void squared_projections(const ArmMatrix& arms, const Vector& v, Vector& out) {
  if (use_parallel(arms)) {
    omp::squared_projections(arms, v, out);
  } else {
    serial::squared_projections(arms, v, out);
  }
}

}  // namespace lazyts::kernels
