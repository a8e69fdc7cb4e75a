#pragma once

#include <random>

#include "fuzzsuper/graded.hpp"

namespace testing_support {

inline fuzzsuper::GradedMatrix random_graded(fuzzsuper::GradedDims dims, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dims.total());
  fuzzsuper::Matrix m(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = u(rng);
      m(r, c) = {re, u(rng)};
    }
  return {dims, std::move(m)};
}

}  // namespace testing_support
