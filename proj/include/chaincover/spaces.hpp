#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chaincover/metric_space.hpp"

namespace chaincover {

// Built-in space families. Each generator is deterministic in its spec (and
// seed), and every generated space passes metric validation.
enum class Family {
  Discrete01,      // k points, 0-1 discrete metric
  SqrtInterval,    // grid on [0, R]; usual metric or |sqrt(x) - sqrt(y)|
  ReciprocalSet,   // { 1/1, 1/2, ..., 1/k } on the line
  AtsujiPairs,     // { 1, 1 + 1/2, 2, 2 + 1/3, ... }, first 2k points
  OrthonormalRays, // origin plus `steps` points along N orthonormal rays
  Lattice,         // integer grid, Euclidean
  RandomCloud,     // uniform points in the unit cube, Euclidean
  ProductSup,      // product carrier with the max of the factor metrics
};

std::string family_name(Family family);
Family family_from_name(const std::string& name);

struct SpaceSpec {
  Family family = Family::Discrete01;
  std::vector<double> params;
  std::uint64_t seed = 0;

  // ProductSup factors; cap_first clamps the first factor's metric at 1.
  std::shared_ptr<SpaceSpec> factor_a;
  std::shared_ptr<SpaceSpec> factor_b;
  bool cap_first = true;

  std::string describe() const;
};

// Parses "family:p1,p2,..." (no factors, no seed). Used by the CLI.
SpaceSpec parse_space_spec(const std::string& text);

FiniteMetricSpace generate(const SpaceSpec& spec, SpaceOptions opts = {});

// Both metrics of the sqrt-interval grid on one carrier:
// first the usual line metric, second |sqrt(x) - sqrt(y)|.
std::pair<FiniteMetricSpace, FiniteMetricSpace> generate_sqrt_interval(
    double R, double step, SpaceOptions opts = {});

}  // namespace chaincover
