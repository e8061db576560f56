#include "chaincover/chain_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <queue>

namespace chaincover {

namespace {

void check_point(const ChainGraph& g, Index x) {
  if (x >= g.size())
    throw DomainError("point index " + std::to_string(x) +
                      " out of range for space of size " + std::to_string(g.size()));
}

}  // namespace

bool is_valid_chain(const FiniteMetricSpace& space, double eps, const Chain& chain) {
  if (chain.points.empty()) return false;
  for (Index p : chain.points)
    if (p >= space.size()) return false;
  for (std::size_t k = 1; k < chain.points.size(); ++k)
    if (space.dist(chain.points[k - 1], chain.points[k]) >= eps) return false;
  return true;
}

double chain_step_sum(const FiniteMetricSpace& space, const Chain& chain) {
  double sum = 0.0;
  for (std::size_t k = 1; k < chain.points.size(); ++k)
    sum += space.dist(chain.points[k - 1], chain.points[k]);
  return sum;
}

ChainGraph build_chain_graph(const FiniteMetricSpace& space, double eps, Exec exec) {
  if (eps <= 0.0) throw DomainError("scale eps must be positive");
  const std::size_t n = space.size();

  ChainGraph g;
  g.space_ = &space;
  g.eps_ = eps;
  g.adj_.resize(n);

  // Adjacency uses strict inequality: ties at exactly eps are not edges.
  const auto fill_row = [&](std::size_t i) {
    auto& row = g.adj_[i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && space.dist(i, j) < eps) row.push_back(j);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      fill_row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) fill_row(i);
  }

  // Components in order of smallest member, so the representative of each
  // component is exactly its smallest point index.
  g.component_id_.assign(n, kUnreachable);
  for (std::size_t start = 0; start < n; ++start) {
    if (g.component_id_[start] != kUnreachable) continue;
    const Index comp = g.representatives_.size();
    g.representatives_.push_back(start);
    g.members_.emplace_back();
    std::deque<Index> queue{start};
    g.component_id_[start] = comp;
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      g.members_[comp].push_back(u);
      for (Index v : g.adj_[u]) {
        if (g.component_id_[v] == kUnreachable) {
          g.component_id_[v] = comp;
          queue.push_back(v);
        }
      }
    }
    std::sort(g.members_[comp].begin(), g.members_[comp].end());
  }
  return g;
}

namespace {

// Layered breadth-first hop counts from one source, optionally stopping at
// a finite depth.
std::vector<std::size_t> hops_from(const ChainGraph& g, Index source, StepLimit limit) {
  std::vector<std::size_t> hops(g.size(), kUnreachable);
  hops[source] = 0;
  std::deque<Index> frontier{source};
  std::size_t depth = 0;
  while (!frontier.empty() && limit.admits(depth + 1)) {
    ++depth;
    std::deque<Index> next;
    for (Index u : frontier)
      for (Index v : g.neighbors(u))
        if (hops[v] == kUnreachable) {
          hops[v] = depth;
          next.push_back(v);
        }
    frontier.swap(next);
  }
  return hops;
}

}  // namespace

ChainBall chain_ball(const ChainGraph& graph, Index x, StepLimit m) {
  check_point(graph, x);
  const auto hops = hops_from(graph, x, m);
  ChainBall ball;
  ball.center = x;
  ball.m = m;
  std::vector<Index> members;
  for (Index y = 0; y < graph.size(); ++y)
    if (hops[y] != kUnreachable) members.push_back(y);
  ball.members = SubsetHandle{std::move(members), graph.size()};
  ball.hops.reserve(ball.members.size());
  for (Index y : ball.members.indices) ball.hops.push_back(hops[y]);
  return ball;
}

std::optional<std::size_t> hop_distance(const ChainGraph& graph, Index x, Index y) {
  check_point(graph, x);
  check_point(graph, y);
  if (graph.component_of(x) != graph.component_of(y)) return std::nullopt;
  if (x == y) return 0;
  const auto hops = hops_from(graph, x, StepLimit::infinity());
  return hops[y];
}

std::vector<double> chain_distances_from(const ChainGraph& graph, Index source) {
  check_point(graph, source);
  const auto& space = graph.space();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(graph.size(), inf);
  dist[source] = 0.0;
  using Entry = std::pair<double, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (Index v : graph.neighbors(u)) {
      const double cand = d + space.dist(u, v);
      if (cand < dist[v]) {
        dist[v] = cand;
        queue.push({cand, v});
      }
    }
  }
  return dist;
}

std::optional<double> chain_distance(const ChainGraph& graph, Index x, Index y) {
  check_point(graph, x);
  check_point(graph, y);
  if (graph.component_of(x) != graph.component_of(y)) return std::nullopt;
  if (x == y) return 0.0;
  return chain_distances_from(graph, x)[y];
}

std::optional<Chain> shortest_chain(const ChainGraph& graph, Index x, Index y) {
  check_point(graph, x);
  check_point(graph, y);
  if (graph.component_of(x) != graph.component_of(y)) return std::nullopt;
  Chain chain;
  chain.eps = graph.eps();
  if (x == y) {
    chain.points = {x};
    return chain;
  }
  const auto& space = graph.space();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(graph.size(), inf);
  std::vector<Index> parent(graph.size(), kUnreachable);
  dist[x] = 0.0;
  using Entry = std::pair<double, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.push({0.0, x});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (Index v : graph.neighbors(u)) {
      const double cand = d + space.dist(u, v);
      if (cand < dist[v]) {
        dist[v] = cand;
        parent[v] = u;
        queue.push({cand, v});
      }
    }
  }
  std::vector<Index> rev;
  for (Index cur = y; cur != x; cur = parent[cur]) rev.push_back(cur);
  rev.push_back(x);
  chain.points.assign(rev.rbegin(), rev.rend());
  return chain;
}

Chain reduce_chain(const FiniteMetricSpace& space, double eps, const Chain& chain) {
  if (eps <= 0.0) throw DomainError("scale eps must be positive");
  if (!is_valid_chain(space, eps, chain))
    throw DomainError("reduce_chain: input is not a valid chain at this scale");
  Chain out;
  out.eps = eps;
  out.points = chain.points;
  // Dropping an interior point whose incident steps sum below eps keeps the
  // chain valid (triangle inequality) and never increases the step sum.
  bool removed = true;
  while (removed && out.points.size() > 2) {
    removed = false;
    for (std::size_t k = 1; k + 1 < out.points.size(); ++k) {
      const double a = space.dist(out.points[k - 1], out.points[k]);
      const double b = space.dist(out.points[k], out.points[k + 1]);
      if (a + b < eps) {
        out.points.erase(out.points.begin() + static_cast<std::ptrdiff_t>(k));
        removed = true;
        break;
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> batch_hop_distances(
    const ChainGraph& graph, const std::vector<Index>& sources, Exec exec) {
  for (Index s : sources) check_point(graph, s);
  std::vector<std::vector<std::size_t>> out(sources.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(sources.size()); ++k)
      out[static_cast<std::size_t>(k)] =
          hops_from(graph, sources[static_cast<std::size_t>(k)], StepLimit::infinity());
  } else {
    for (std::size_t k = 0; k < sources.size(); ++k)
      out[k] = hops_from(graph, sources[k], StepLimit::infinity());
  }
  return out;
}

std::vector<std::vector<double>> all_pairs_chain_distance(const ChainGraph& graph,
                                                          Exec exec) {
  const std::size_t n = graph.size();
  std::vector<std::vector<double>> out(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      out[static_cast<std::size_t>(i)] =
          chain_distances_from(graph, static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = chain_distances_from(graph, i);
  }
  return out;
}

}  // namespace chaincover
