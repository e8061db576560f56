#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "chaincover/chain_graph.hpp"

namespace chaincover {

// A positive integer per chainable component of one graph: the finite form
// of a step-uniform integer-valued function (constant on each component).
// References its graph, which must outlive it.
class ComponentLabeling {
 public:
  const ChainGraph& graph() const { return *graph_; }
  const std::vector<int>& values() const { return values_; }
  int value(Index component) const { return values_[component]; }

  friend ComponentLabeling build_labeling(const ChainGraph&, std::vector<int>);
  friend class RhoMetric;

 private:
  ComponentLabeling() = default;
  const ChainGraph* graph_ = nullptr;
  std::vector<int> values_;
};

// One value per component, each >= 1.
ComponentLabeling build_labeling(const ChainGraph& graph, std::vector<int> values);

// g(x) = label of the component of x. Constant on components, hence
// dist(x,y) < eps implies g(x) = g(y).
std::vector<int> as_point_function(const ComponentLabeling& labeling);

// Labels the components met by B injectively with 1,2,3,... in order of
// first appearance along B; every other component gets 1. The image of the
// point function on B then has exactly one value per component met.
ComponentLabeling adversarial_labeling(const ChainGraph& graph, const SubsetHandle& B);

// The derived metric: within one component it is the chain metric; across
// components it is the chain distance of each argument to its component
// representative plus both components' labels. Symmetric, zero only on the
// diagonal, and satisfies the triangle inequality.
class RhoMetric {
 public:
  const ChainGraph& graph() const { return *graph_; }
  const ComponentLabeling& labeling() const { return labeling_; }
  double eps() const { return graph_->eps(); }
  std::size_t size() const { return graph_->size(); }

  Index representative(Index component) const { return reps_[component]; }
  const std::vector<Index>& representatives() const { return reps_; }
  // Chain distance from x to the representative of its component.
  double rep_distance(Index x) const { return rep_dist_[x]; }
  // Whether the within-component all-pairs cache was materialized at build.
  bool caches_pairs() const { return !pair_cache_.empty(); }

  double value(Index x, Index y) const;

  friend RhoMetric build_rho(const ComponentLabeling&,
                             const std::optional<std::vector<Index>>&, Exec);

 private:
  RhoMetric() = default;

  const ChainGraph* graph_ = nullptr;
  ComponentLabeling labeling_;  // by value: labelings are small
  std::vector<Index> reps_;
  std::vector<double> rep_dist_;
  // All-pairs chain distances, cached up to the space's dense limit so
  // value() needs no traversal; larger spaces fall back to a per-query
  // shortest-path pass.
  std::vector<std::vector<double>> pair_cache_;
};

// Builds the derived metric for a labeling, optionally overriding the
// component representatives (one per component, each inside its component).
// The labeling (and its graph) must outlive the result.
RhoMetric build_rho(const ComponentLabeling& labeling,
                    const std::optional<std::vector<Index>>& representatives = {},
                    Exec exec = Exec::Parallel);

double rho_distance(const RhoMetric& rho, Index x, Index y);

// Materializes the full matrix of the derived metric.
std::vector<std::vector<double>> rho_matrix(const RhoMetric& rho,
                                            Exec exec = Exec::Parallel);

struct LocalIdentityViolation {
  Index x, y;
  double base_value;   // dist(x, y)
  double other_value;  // metric2(x, y)
};

// Checks that two metrics on one carrier agree on every pair whose distance
// in either metric is below eps. The callable must be symmetric and safe to
// invoke concurrently. Violations come back in ascending (x, y) order.
std::vector<LocalIdentityViolation> check_locally_identical(
    const FiniteMetricSpace& space,
    const std::function<double(Index, Index)>& metric2, double eps,
    Exec exec = Exec::Parallel);

// Same check against a derived metric on the same carrier at its own scale.
std::vector<LocalIdentityViolation> check_locally_identical(
    const FiniteMetricSpace& space, const RhoMetric& rho,
    Exec exec = Exec::Parallel);

// Slope certificate below a distance threshold: empty violations mean
// |f(x) - f(y)| <= K * dist(x,y) + tau for all pairs with dist(x,y) < delta.
struct LsWitness {
  double K = 0.0;
  double delta = 0.0;
  struct Violation {
    Index x, y;
    double dist;
    double delta_f;
  };
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

LsWitness check_lipschitz_small(const FiniteMetricSpace& space,
                                const std::vector<double>& f, double K, double delta,
                                Exec exec = Exec::Parallel);

}  // namespace chaincover
