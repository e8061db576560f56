#include "chaincover/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace chaincover::reference {

std::vector<Index> chain_ball_members(const FiniteMetricSpace& space, double eps,
                                      Index x, StepLimit m) {
  std::set<Index> current{x};
  // B^1 is the open ball around x; each further level unions the open balls
  // around the previous level's members.
  std::size_t level = 0;
  while (m.admits(level + 1)) {
    std::set<Index> next = current;
    for (Index u : current)
      for (Index y = 0; y < space.size(); ++y)
        if (space.dist(u, y) < eps) next.insert(y);
    ++level;
    if (next == current) break;  // component exhausted
    current.swap(next);
  }
  return {current.begin(), current.end()};
}

std::optional<std::size_t> hop_distance(const FiniteMetricSpace& space, double eps,
                                        Index x, Index y) {
  if (x == y) return 0;
  std::set<Index> current{x};
  std::size_t depth = 0;
  while (true) {
    std::set<Index> next = current;
    for (Index u : current)
      for (Index z = 0; z < space.size(); ++z)
        if (space.dist(u, z) < eps) next.insert(z);
    ++depth;
    if (next.count(y)) return depth;
    if (next == current) return std::nullopt;
    current.swap(next);
  }
}

namespace {

void dfs_paths(const FiniteMetricSpace& space, double eps, Index u, Index target,
               std::vector<bool>& visited, double sum, double& best) {
  if (u == target) {
    best = std::min(best, sum);
    return;
  }
  for (Index v = 0; v < space.size(); ++v) {
    if (visited[v] || v == u) continue;
    const double step = space.dist(u, v);
    if (step >= eps) continue;
    visited[v] = true;
    dfs_paths(space, eps, v, target, visited, sum + step, best);
    visited[v] = false;
  }
}

}  // namespace

std::optional<double> chain_distance_simple_paths(const FiniteMetricSpace& space,
                                                  double eps, Index x, Index y) {
  if (x == y) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> visited(space.size(), false);
  visited[x] = true;
  dfs_paths(space, eps, x, y, visited, 0.0, best);
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

std::vector<std::vector<double>> chain_distance_relaxation(
    const FiniteMetricSpace& space, double eps) {
  const std::size_t n = space.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (Index i = 0; i < n; ++i) {
    d[i][i] = 0.0;
    for (Index j = 0; j < n; ++j)
      if (i != j && space.dist(i, j) < eps) d[i][j] = space.dist(i, j);
  }
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) {
      if (d[i][k] == inf) continue;
      for (Index j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}

std::size_t min_cover_size_brute(const FiniteMetricSpace& space, double eps,
                                 const SubsetHandle& B, StepLimit m,
                                 std::size_t max_size) {
  const std::size_t n = space.size();
  if (max_size == 0) max_size = B.size();

  // Coverage sets via the reference ball expansion.
  std::vector<std::vector<bool>> covers(n, std::vector<bool>(B.size(), false));
  for (Index c = 0; c < n; ++c) {
    const auto members = chain_ball_members(space, eps, c, m);
    for (std::size_t k = 0; k < B.size(); ++k)
      covers[c][k] = std::binary_search(members.begin(), members.end(), B.indices[k]);
  }

  std::vector<Index> combo;
  const auto covered_by_combo = [&]() {
    for (std::size_t k = 0; k < B.size(); ++k) {
      bool hit = false;
      for (Index c : combo)
        if (covers[c][k]) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };

  // Enumerate center subsets of ascending size.
  for (std::size_t size = 1; size <= std::min(max_size, n); ++size) {
    combo.resize(size);
    for (std::size_t k = 0; k < size; ++k) combo[k] = k;
    const auto next_combination = [&]() {
      std::size_t k = size;
      while (k > 0) {
        --k;
        if (combo[k] + (size - k) < n) {
          ++combo[k];
          for (std::size_t l = k + 1; l < size; ++l) combo[l] = combo[l - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      if (covered_by_combo()) return size;
    } while (next_combination());
  }
  throw DomainError("brute-force cover: no cover within the size limit");
}

std::optional<PrefixWitness> prefix_certificate_brute(const FiniteMetricSpace& space,
                                                      const std::vector<Index>& seq,
                                                      double eps, std::size_t min_tail) {
  if (min_tail == 0 || seq.size() < min_tail)
    throw DomainError("brute-force prefix: bad min_tail");
  const std::size_t n = space.size();
  const std::size_t last_start = seq.size() - min_tail;
  for (std::size_t m = 1; m < n + 1; ++m) {
    for (std::size_t t = 0; t <= last_start; ++t) {
      for (Index c = 0; c < n; ++c) {
        const auto members = chain_ball_members(space, eps, c, StepLimit::finite(m));
        bool all_in = true;
        for (std::size_t k = t; k < seq.size() && all_in; ++k)
          all_in = std::binary_search(members.begin(), members.end(), seq[k]);
        if (all_in) return PrefixWitness{m, t, c};
      }
    }
  }
  return std::nullopt;
}

}  // namespace chaincover::reference
