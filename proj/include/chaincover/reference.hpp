#pragma once

#include <optional>
#include <vector>

#include "chaincover/metric_space.hpp"
#include "chaincover/chain_graph.hpp"

// Brute-force reference implementations. These follow the definitions
// directly (set expansion, exhaustive path enumeration, relaxation,
// subset enumeration) and deliberately share no code with the optimized
// kernels; the verification suites and tests compare the two routes.
namespace chaincover::reference {

// Members of the depth-m chain ball by repeated union of open balls, the
// recursive definition itself. Sorted ascending.
std::vector<Index> chain_ball_members(const FiniteMetricSpace& space, double eps,
                                      Index x, StepLimit m);

// First depth at which y enters the expanding ball around x.
std::optional<std::size_t> hop_distance(const FiniteMetricSpace& space, double eps,
                                        Index x, Index y);

// Minimum step sum over all simple paths with steps below eps, by
// exhaustive depth-first enumeration. Exponential; keep n small.
std::optional<double> chain_distance_simple_paths(const FiniteMetricSpace& space,
                                                  double eps, Index x, Index y);

// All-pairs chain distances by Floyd-Warshall relaxation on the thresholded
// graph; +inf across components. An independent algebraic route to the same
// quantity as the shortest-path kernels.
std::vector<std::vector<double>> chain_distance_relaxation(
    const FiniteMetricSpace& space, double eps);

// Minimum number of depth-m chain balls covering B, by enumerating center
// subsets of ascending size. Exponential; keep n small.
std::size_t min_cover_size_brute(const FiniteMetricSpace& space, double eps,
                                 const SubsetHandle& B, StepLimit m,
                                 std::size_t max_size = 0);

// First (depth, tail start, center) in lexicographic search order such that
// the whole tail sits in the depth-m ball around the center, using the
// set-expansion membership above. Tail length must stay >= min_tail.
struct PrefixWitness {
  std::size_t m = 0;
  std::size_t tail_start = 0;
  Index center = 0;
};

std::optional<PrefixWitness> prefix_certificate_brute(const FiniteMetricSpace& space,
                                                      const std::vector<Index>& seq,
                                                      double eps, std::size_t min_tail);

}  // namespace chaincover::reference
