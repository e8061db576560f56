#include "chaincover/rho_metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>

namespace chaincover {

ComponentLabeling build_labeling(const ChainGraph& graph, std::vector<int> values) {
  if (values.size() != graph.component_count())
    throw DomainError("labeling needs one value per component: expected " +
                      std::to_string(graph.component_count()) + ", got " +
                      std::to_string(values.size()));
  for (int v : values)
    if (v < 1)
      throw DomainError("labeling values must be positive integers, got " +
                        std::to_string(v));
  ComponentLabeling labeling;
  labeling.graph_ = &graph;
  labeling.values_ = std::move(values);
  return labeling;
}

std::vector<int> as_point_function(const ComponentLabeling& labeling) {
  const ChainGraph& g = labeling.graph();
  std::vector<int> f(g.size());
  for (Index x = 0; x < g.size(); ++x) f[x] = labeling.value(g.component_of(x));
  return f;
}

ComponentLabeling adversarial_labeling(const ChainGraph& graph, const SubsetHandle& B) {
  if (B.space_size != graph.size())
    throw StructuralError("adversarial_labeling: subset belongs to a different carrier");
  if (B.empty()) throw DomainError("adversarial_labeling: subset is empty");
  std::vector<int> values(graph.component_count(), 1);
  std::vector<bool> seen(graph.component_count(), false);
  int next = 1;
  for (Index x : B.indices) {
    const Index c = graph.component_of(x);
    if (!seen[c]) {
      seen[c] = true;
      values[c] = next++;
    }
  }
  return build_labeling(graph, std::move(values));
}

RhoMetric build_rho(const ComponentLabeling& labeling,
                    const std::optional<std::vector<Index>>& representatives,
                    Exec exec) {
  const ChainGraph& graph = labeling.graph();
  RhoMetric rho;
  rho.graph_ = &graph;
  rho.labeling_ = labeling;

  if (representatives.has_value()) {
    if (representatives->size() != graph.component_count())
      throw DomainError("representative override needs one point per component");
    for (Index c = 0; c < graph.component_count(); ++c) {
      const Index r = (*representatives)[c];
      if (r >= graph.size() || graph.component_of(r) != c)
        throw DomainError("representative " + std::to_string(r) +
                          " is not in its claimed component " + std::to_string(c));
    }
    rho.reps_ = *representatives;
  } else {
    rho.reps_ = graph.representatives();
  }

  const std::size_t n = graph.size();
  if (n <= graph.space().options().dense_limit) {
    rho.pair_cache_ = all_pairs_chain_distance(graph, exec);
    rho.rep_dist_.resize(n);
    for (Index x = 0; x < n; ++x)
      rho.rep_dist_[x] = rho.pair_cache_[rho.reps_[graph.component_of(x)]][x];
  } else {
    // One shortest-path pass per component, from its representative.
    rho.rep_dist_.assign(n, 0.0);
    const auto comp_count = graph.component_count();
    std::vector<std::vector<double>> rows(comp_count);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t c = 0; c < static_cast<std::int64_t>(comp_count); ++c)
        rows[static_cast<std::size_t>(c)] =
            chain_distances_from(graph, rho.reps_[static_cast<std::size_t>(c)]);
    } else {
      for (std::size_t c = 0; c < comp_count; ++c)
        rows[c] = chain_distances_from(graph, rho.reps_[c]);
    }
    for (Index x = 0; x < n; ++x) rho.rep_dist_[x] = rows[graph.component_of(x)][x];
  }
  return rho;
}

double RhoMetric::value(Index x, Index y) const {
  if (x >= size() || y >= size())
    throw DomainError("point index out of range for the derived metric");
  if (x == y) return 0.0;
  const Index cx = graph_->component_of(x);
  const Index cy = graph_->component_of(y);
  if (cx == cy) {
    if (!pair_cache_.empty()) return pair_cache_[x][y];
    return chain_distances_from(*graph_, x)[y];
  }
  return rep_dist_[x] + labeling_.value(cx) + rep_dist_[y] + labeling_.value(cy);
}

double rho_distance(const RhoMetric& rho, Index x, Index y) { return rho.value(x, y); }

std::vector<std::vector<double>> rho_matrix(const RhoMetric& rho, Exec exec) {
  const std::size_t n = rho.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  if (rho.caches_pairs()) {
    // Query the metric itself; with the pair cache each call is O(1).
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) out[x][y] = rho.value(x, y);
    return out;
  }
  // No cache (large space): bulk-materialize with one traversal per source
  // instead of one per pair.
  const ChainGraph& graph = rho.graph();
  const auto chain = all_pairs_chain_distance(graph, exec);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (x == y) continue;
      const Index cx = graph.component_of(x);
      const Index cy = graph.component_of(y);
      if (cx == cy)
        out[x][y] = chain[x][y];
      else
        out[x][y] = rho.rep_distance(x) + rho.labeling().value(cx) +
                    rho.rep_distance(y) + rho.labeling().value(cy);
    }
  return out;
}

namespace {

// Pair scan shared by the local-identity check: per-row collection keeps the
// output order independent of the execution policy.
std::vector<LocalIdentityViolation> scan_pairs_local_identity(
    const FiniteMetricSpace& space, const std::function<double(Index, Index)>& metric2,
    double eps, Exec exec) {
  const std::size_t n = space.size();
  const double tau = space.tau();
  std::vector<std::vector<LocalIdentityViolation>> per_row(n);
  const auto row = [&](std::size_t x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double d = space.dist(x, y);
      const double m2 = metric2(x, y);
      if ((d < eps || m2 < eps) && std::abs(m2 - d) > tau)
        per_row[x].push_back({x, y, d, m2});
    }
  };
  if (exec == Exec::Parallel) {
    // The callable is caller-supplied; keep its exceptions out of the
    // parallel region.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x) {
      try {
        row(static_cast<std::size_t>(x));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t x = 0; x < n; ++x) row(x);
  }
  std::vector<LocalIdentityViolation> merged;
  for (auto& r : per_row) merged.insert(merged.end(), r.begin(), r.end());
  return merged;
}

}  // namespace

std::vector<LocalIdentityViolation> check_locally_identical(
    const FiniteMetricSpace& space, const std::function<double(Index, Index)>& metric2,
    double eps, Exec exec) {
  if (eps <= 0.0) throw DomainError("scale eps must be positive");
  return scan_pairs_local_identity(space, metric2, eps, exec);
}

std::vector<LocalIdentityViolation> check_locally_identical(
    const FiniteMetricSpace& space, const RhoMetric& rho, Exec exec) {
  if (rho.size() != space.size())
    throw StructuralError("check_locally_identical: carrier size mismatch");
  const auto values = rho_matrix(rho, exec);
  return scan_pairs_local_identity(
      space, [&](Index x, Index y) { return values[x][y]; }, rho.eps(), exec);
}

LsWitness check_lipschitz_small(const FiniteMetricSpace& space,
                                const std::vector<double>& f, double K, double delta,
                                Exec exec) {
  if (f.size() != space.size())
    throw StructuralError("check_lipschitz_small: need one value per point");
  if (K < 0.0) throw DomainError("slope bound K must be nonnegative");
  if (delta <= 0.0) throw DomainError("scale delta must be positive");
  const std::size_t n = space.size();
  const double tau = space.tau();
  LsWitness witness;
  witness.K = K;
  witness.delta = delta;
  std::vector<std::vector<LsWitness::Violation>> per_row(n);
  const auto row = [&](std::size_t x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double d = space.dist(x, y);
      if (d >= delta) continue;
      const double df = std::abs(f[x] - f[y]);
      if (df > K * d + tau) per_row[x].push_back({x, y, d, df});
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x)
      row(static_cast<std::size_t>(x));
  } else {
    for (std::size_t x = 0; x < n; ++x) row(x);
  }
  for (auto& r : per_row)
    witness.violations.insert(witness.violations.end(), r.begin(), r.end());
  return witness;
}

}  // namespace chaincover
