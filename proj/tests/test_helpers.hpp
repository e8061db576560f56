#pragma once

#include <random>
#include <vector>

#include "chaincover/metric_space.hpp"

namespace test_helpers {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Small random point cloud; always a valid metric space.
inline chaincover::FiniteMetricSpace random_cloud(std::mt19937_64& rng, std::size_t n,
                                                  std::size_t dim) {
  std::vector<std::vector<double>> coords(n, std::vector<double>(dim, 0.0));
  for (auto& p : coords)
    for (auto& v : p) v = uniform01(rng);
  return chaincover::FiniteMetricSpace::from_points(std::move(coords));
}

// Points on the line at the given positions.
inline chaincover::FiniteMetricSpace line_space(const std::vector<double>& points) {
  const std::size_t n = points.size();
  std::vector<double> table(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table[i * n + j] = std::abs(points[i] - points[j]);
  return chaincover::FiniteMetricSpace::from_table(n, std::move(table));
}

}  // namespace test_helpers
