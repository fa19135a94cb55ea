#pragma once

#include <initializer_list>
#include <vector>

#include "lazyts/instance.hpp"

namespace testing_helpers {

inline lazyts::ArmMatrix rows(std::initializer_list<std::initializer_list<double>> data) {
  lazyts::ArmMatrix m(static_cast<Eigen::Index>(data.size()),
                      static_cast<Eigen::Index>(data.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : data) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline lazyts::Vector vec(std::initializer_list<double> data) {
  lazyts::Vector v(static_cast<Eigen::Index>(data.size()));
  Eigen::Index i = 0;
  for (double x : data) v(i++) = x;
  return v;
}

inline std::vector<lazyts::Vector> arm_list(const lazyts::ArmSet& arms) {
  std::vector<lazyts::Vector> out;
  for (std::size_t i = 0; i < arms.size(); ++i) out.push_back(arms.arm(i));
  return out;
}

}  // namespace testing_helpers
