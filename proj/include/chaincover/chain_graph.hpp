#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "chaincover/metric_space.hpp"

namespace chaincover {

// Step budget for chain balls and chain covers: a positive integer or
// infinity (the full chainable component). Infinity is a real sentinel,
// never a large stand-in integer.
class StepLimit {
 public:
  static StepLimit infinity() {
    StepLimit s;
    s.steps_ = kInf;
    return s;
  }
  static StepLimit finite(std::size_t m) {
    if (m == 0) throw DomainError("step count must be at least 1");
    StepLimit s;
    s.steps_ = m;
    return s;
  }

  bool is_infinite() const { return steps_ == kInf; }
  std::size_t value() const {
    if (is_infinite()) throw DomainError("infinite step limit has no finite value");
    return steps_;
  }
  bool admits(std::size_t hops) const { return is_infinite() || hops <= steps_; }

  friend bool operator==(const StepLimit& a, const StepLimit& b) {
    return a.steps_ == b.steps_;
  }
  // Finite limits order by value; infinity sorts last.
  friend bool operator<(const StepLimit& a, const StepLimit& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return a.steps_ < b.steps_;
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::size_t steps_ = kInf;
};

// A sequence of points whose consecutive distances are all strictly
// below eps.
struct Chain {
  std::vector<Index> points;
  double eps = 0.0;

  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
};

bool is_valid_chain(const FiniteMetricSpace& space, double eps, const Chain& chain);
double chain_step_sum(const FiniteMetricSpace& space, const Chain& chain);

// The eps-threshold graph: points are adjacent iff their distance is
// strictly below eps. Components are the eps-chainable components, indexed
// in order of their smallest point; that smallest point is the component's
// representative. Immutable after build; queries allocate private state.
// Holds a reference to its space, which must outlive the graph.
class ChainGraph {
 public:
  const FiniteMetricSpace& space() const { return *space_; }
  double eps() const { return eps_; }
  std::size_t size() const { return space_->size(); }

  const std::vector<Index>& neighbors(Index x) const { return adj_[x]; }
  Index component_of(Index x) const { return component_id_[x]; }
  std::size_t component_count() const { return representatives_.size(); }
  Index representative(Index component) const { return representatives_[component]; }
  const std::vector<Index>& representatives() const { return representatives_; }
  const std::vector<Index>& component_members(Index component) const {
    return members_[component];
  }

  friend ChainGraph build_chain_graph(const FiniteMetricSpace&, double, Exec);

 private:
  ChainGraph() = default;

  const FiniteMetricSpace* space_ = nullptr;
  double eps_ = 0.0;
  std::vector<std::vector<Index>> adj_;
  std::vector<Index> component_id_;
  std::vector<Index> representatives_;
  std::vector<std::vector<Index>> members_;
};

ChainGraph build_chain_graph(const FiniteMetricSpace& space, double eps,
                             Exec exec = Exec::Parallel);

// Points reachable from the center by a chain of at most m steps, with the
// minimal hop count per member. m infinite gives the full component.
struct ChainBall {
  Index center = 0;
  StepLimit m = StepLimit::infinity();
  SubsetHandle members;
  std::vector<std::size_t> hops;  // aligned with members.indices
};

ChainBall chain_ball(const ChainGraph& graph, Index x, StepLimit m);

// Minimal number of steps of any chain joining x and y; nullopt when they
// lie in different components. 0 iff x == y.
std::optional<std::size_t> hop_distance(const ChainGraph& graph, Index x, Index y);

// Infimum of step sums over chains joining x and y (attained by a shortest
// path since edge weights are positive); nullopt across components.
std::optional<double> chain_distance(const ChainGraph& graph, Index x, Index y);

// A chain realizing chain_distance; nullopt across components.
std::optional<Chain> shortest_chain(const ChainGraph& graph, Index x, Index y);

// Removes interior points whose two incident steps sum below eps until every
// two consecutive steps sum to at least eps. Endpoints are preserved and the
// step sum never increases. Throws DomainError if the input is not a valid
// chain at eps.
Chain reduce_chain(const FiniteMetricSpace& space, double eps, const Chain& chain);

// Batch kernels. Rows are independent, so serial and parallel execution
// produce identical output.

// Shortest-path distances from one source; unreachable entries are +inf.
std::vector<double> chain_distances_from(const ChainGraph& graph, Index source);

// Hop counts from each source; unreachable entries are SIZE_MAX.
constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();
std::vector<std::vector<std::size_t>> batch_hop_distances(
    const ChainGraph& graph, const std::vector<Index>& sources,
    Exec exec = Exec::Parallel);

std::vector<std::vector<double>> all_pairs_chain_distance(const ChainGraph& graph,
                                                          Exec exec = Exec::Parallel);

}  // namespace chaincover
