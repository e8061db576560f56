#include "chaincover/covers.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>

namespace chaincover {

std::string to_string(CoverMethod method) {
  switch (method) {
    case CoverMethod::Greedy: return "greedy";
    case CoverMethod::Exact: return "exact";
    case CoverMethod::Certificate: return "certificate";
  }
  return "?";
}

namespace {

void check_subset(const ChainGraph& graph, const SubsetHandle& B, const char* what) {
  if (B.space_size != graph.size())
    throw StructuralError(std::string(what) + ": subset belongs to a different carrier");
  if (B.empty()) throw DomainError(std::string(what) + ": subset is empty");
}

// Fixed-width bitset over the positions of B.
struct BitMask {
  std::vector<std::uint64_t> blocks;

  explicit BitMask(std::size_t bits = 0) : blocks((bits + 63) / 64, 0) {}
  void set(std::size_t k) { blocks[k / 64] |= std::uint64_t{1} << (k % 64); }
  bool any() const {
    for (auto b : blocks)
      if (b) return true;
    return false;
  }
  std::size_t count_and(const BitMask& other) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(blocks[i] & other.blocks[i]));
    return c;
  }
  void subtract(const BitMask& other) {
    for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] &= ~other.blocks[i];
  }
  std::size_t first_set() const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (blocks[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(blocks[i]));
    return static_cast<std::size_t>(-1);
  }
  friend bool operator<(const BitMask& a, const BitMask& b) { return a.blocks < b.blocks; }
  friend bool operator==(const BitMask& a, const BitMask& b) {
    return a.blocks == b.blocks;
  }
};

// Coverage pattern of every candidate center: which positions of B fall in
// the depth-m chain ball around it. Hop counts are symmetric, so one
// traversal per B-point suffices.
std::vector<BitMask> coverage_masks(const ChainGraph& graph, const SubsetHandle& B,
                                    StepLimit m, Exec exec) {
  const std::size_t n = graph.size();
  const auto hops = batch_hop_distances(graph, B.indices, exec);
  std::vector<BitMask> masks(n, BitMask(B.size()));
  for (std::size_t k = 0; k < B.size(); ++k)
    for (Index c = 0; c < n; ++c)
      if (hops[k][c] != kUnreachable && m.admits(hops[k][c])) masks[c].set(k);
  return masks;
}

std::vector<Index> greedy_cover(const std::vector<BitMask>& masks, std::size_t b_size) {
  BitMask uncovered(b_size);
  for (std::size_t k = 0; k < b_size; ++k) uncovered.set(k);
  std::vector<Index> centers;
  while (uncovered.any()) {
    std::size_t best_gain = 0;
    Index best = 0;
    for (Index c = 0; c < masks.size(); ++c) {
      const std::size_t gain = masks[c].count_and(uncovered);
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best_gain == 0)
      throw DomainError("greedy cover stalled: some point is coverable by no candidate");
    centers.push_back(best);
    uncovered.subtract(masks[best]);
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

// Exhaustive minimum cover over deduplicated coverage patterns. Depth-first
// branching on the lowest uncovered position; candidates are visited in
// ascending center order, so the first cover found at the optimal size is
// deterministic.
struct ExactSearch {
  const std::vector<BitMask>* masks;        // deduplicated
  const std::vector<Index>* centers;        // candidate center per mask
  std::vector<std::vector<std::size_t>> coverers;  // position -> mask ids
  std::vector<std::size_t> chosen;
  std::vector<Index> best;

  bool dfs(BitMask& uncovered, std::size_t budget) {
    if (!uncovered.any()) {
      best.clear();
      for (std::size_t id : chosen) best.push_back((*centers)[id]);
      std::sort(best.begin(), best.end());
      return true;
    }
    if (budget == 0) return false;
    const std::size_t pos = uncovered.first_set();
    for (std::size_t id : coverers[pos]) {
      BitMask saved = uncovered;
      uncovered.subtract((*masks)[id]);
      chosen.push_back(id);
      if (dfs(uncovered, budget - 1)) return true;
      chosen.pop_back();
      uncovered = saved;
    }
    return false;
  }
};

std::vector<Index> exact_cover(const std::vector<BitMask>& all_masks, std::size_t b_size,
                               std::size_t exact_limit) {
  // Deduplicate patterns, keeping the smallest center index for each.
  std::map<BitMask, Index> dedup;
  for (Index c = 0; c < all_masks.size(); ++c) {
    if (!all_masks[c].any()) continue;
    auto [it, inserted] = dedup.emplace(all_masks[c], c);
    if (!inserted) it->second = std::min(it->second, c);
  }
  if (dedup.size() > exact_limit)
    throw CapacityError("exact cover search: " + std::to_string(dedup.size()) +
                        " distinct candidate patterns exceed the limit of " +
                        std::to_string(exact_limit));

  std::vector<BitMask> masks;
  std::vector<Index> centers;
  for (const auto& [mask, center] : dedup) {
    masks.push_back(mask);
    centers.push_back(center);
  }
  // Candidate order by center index so ties resolve deterministically.
  std::vector<std::size_t> order(masks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return centers[a] < centers[b]; });

  ExactSearch search;
  search.masks = &masks;
  search.centers = &centers;
  search.coverers.resize(b_size);
  for (std::size_t pos = 0; pos < b_size; ++pos)
    for (std::size_t i : order)
      if (masks[i].blocks[pos / 64] & (std::uint64_t{1} << (pos % 64)))
        search.coverers[pos].push_back(i);
  for (std::size_t pos = 0; pos < b_size; ++pos)
    if (search.coverers[pos].empty())
      throw DomainError("exact cover: some point is coverable by no candidate");

  for (std::size_t budget = 1; budget <= masks.size(); ++budget) {
    BitMask uncovered(b_size);
    for (std::size_t k = 0; k < b_size; ++k) uncovered.set(k);
    search.chosen.clear();
    if (search.dfs(uncovered, budget)) return search.best;
  }
  throw DomainError("exact cover: unreachable");
}

CoverResult cover_impl(const ChainGraph& graph, const SubsetHandle& B, StepLimit m,
                       const CoverOptions& opts) {
  check_subset(graph, B, "cover");

  CoverResult result;
  result.m = m;
  result.eps = graph.eps();
  result.covered = B;
  result.method = opts.method;

  if (m.is_infinite()) {
    // One center per component met: its representative.
    std::vector<Index> comps;
    for (Index x : B.indices) comps.push_back(graph.component_of(x));
    std::sort(comps.begin(), comps.end());
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    for (Index c : comps) result.centers.push_back(graph.representative(c));
    std::sort(result.centers.begin(), result.centers.end());
    return result;
  }

  const auto masks = coverage_masks(graph, B, m, opts.exec);
  if (opts.method == CoverMethod::Exact)
    result.centers = exact_cover(masks, B.size(), opts.exact_limit);
  else
    result.centers = greedy_cover(masks, B.size());
  return result;
}

}  // namespace

CoverResult net_cover(const FiniteMetricSpace& space, const SubsetHandle& B, double eps,
                      const CoverOptions& opts) {
  const auto graph = build_chain_graph(space, eps, opts.exec);
  return cover_impl(graph, B, StepLimit::finite(1), opts);
}

CoverResult chain_cover(const FiniteMetricSpace& space, const SubsetHandle& B,
                        double eps, StepLimit m, const CoverOptions& opts) {
  const auto graph = build_chain_graph(space, eps, opts.exec);
  return cover_impl(graph, B, m, opts);
}

CoverResult chain_cover(const ChainGraph& graph, const SubsetHandle& B, StepLimit m,
                        const CoverOptions& opts) {
  return cover_impl(graph, B, m, opts);
}

std::size_t components_met(const ChainGraph& graph, const SubsetHandle& B) {
  check_subset(graph, B, "components_met");
  std::vector<Index> comps;
  for (Index x : B.indices) comps.push_back(graph.component_of(x));
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
  return comps.size();
}

ForwardBoundResult rho_bounded_forward_bound(const RhoMetric& rho,
                                             const std::vector<Index>& F, std::size_t M,
                                             Index j) {
  const ChainGraph& graph = rho.graph();
  if (F.empty()) throw DomainError("forward bound: component list is empty");
  for (Index c : F)
    if (c >= graph.component_count())
      throw DomainError("forward bound: component " + std::to_string(c) +
                        " does not exist");
  if (std::find(F.begin(), F.end(), j) == F.end())
    throw DomainError("forward bound: component " + std::to_string(j) +
                      " is not in the selected list");
  if (M == 0) throw DomainError("forward bound: depth M must be at least 1");

  ForwardBoundResult result;
  for (Index c : F)
    result.max_label = std::max(result.max_label,
                                static_cast<double>(rho.labeling().value(c)));
  result.bound = static_cast<double>(M) * graph.eps() + 2.0 * result.max_label;

  const Index target = rho.representative(j);
  const double tau = graph.space().tau();
  for (Index c : F) {
    const auto ball = chain_ball(graph, rho.representative(c), StepLimit::finite(M));
    for (Index x : ball.members.indices) {
      ++result.checked;
      const double v = rho.value(x, target);
      if (v > result.bound + tau) result.violations.push_back({x, v});
    }
  }
  return result;
}

ReverseCover rho_bounded_reverse_cover(const RhoMetric& rho, const SubsetHandle& B,
                                       double R) {
  const ChainGraph& graph = rho.graph();
  check_subset(graph, B, "reverse cover");
  if (R <= 0.0) throw DomainError("reverse cover: radius R must be positive");

  const Index i0 = graph.component_of(B.indices.front());
  const Index anchor = rho.representative(i0);
  for (Index x : B.indices) {
    const double v = rho.value(x, anchor);
    if (v >= R)
      throw DomainError("reverse cover: point " + std::to_string(x) +
                        " has derived distance " + std::to_string(v) +
                        " to the anchor representative, not below R = " +
                        std::to_string(R));
  }

  ReverseCover out;
  for (Index x : B.indices) out.components.push_back(graph.component_of(x));
  std::sort(out.components.begin(), out.components.end());
  out.components.erase(std::unique(out.components.begin(), out.components.end()),
                       out.components.end());
  for (Index c : out.components)
    out.max_label =
        std::max(out.max_label, static_cast<double>(rho.labeling().value(c)));

  const double anchor_label = rho.labeling().value(i0);
  const double depth = std::ceil(2.0 * (R + out.max_label + anchor_label) / graph.eps());
  if (!(depth < 1e15))
    throw DomainError("reverse cover: R is too large relative to the scale");
  out.M = static_cast<std::size_t>(depth) + 1;

  out.cover.m = StepLimit::finite(out.M);
  out.cover.eps = graph.eps();
  out.cover.covered = B;
  out.cover.method = CoverMethod::Certificate;
  for (Index c : out.components) out.cover.centers.push_back(rho.representative(c));
  std::sort(out.cover.centers.begin(), out.cover.centers.end());

  // Verify the certificate: every point of B within M hops of the
  // representative of its own component.
  const auto hops = batch_hop_distances(graph, out.cover.centers, Exec::Serial);
  for (Index x : B.indices) {
    bool covered = false;
    for (std::size_t k = 0; k < out.cover.centers.size() && !covered; ++k)
      covered = hops[k][x] != kUnreachable && hops[k][x] <= out.M;
    if (!covered) out.uncovered.push_back(x);
  }
  return out;
}

namespace {

void check_grids(const std::vector<double>& eps_grid,
                 const std::vector<StepLimit>& m_grid) {
  if (eps_grid.empty()) throw DomainError("scale grid is empty");
  if (m_grid.empty()) throw DomainError("depth grid is empty");
  for (std::size_t k = 0; k < eps_grid.size(); ++k) {
    if (eps_grid[k] <= 0.0) throw DomainError("scale grid entries must be positive");
    if (k > 0 && eps_grid[k] <= eps_grid[k - 1])
      throw DomainError("scale grid must be strictly ascending");
  }
  for (std::size_t k = 1; k < m_grid.size(); ++k)
    if (!(m_grid[k - 1] < m_grid[k]))
      throw DomainError("depth grid must be strictly ascending");
}

}  // namespace

ScaleProfile scale_profile(const FiniteMetricSpace& space, const SubsetHandle& B,
                           const std::vector<double>& eps_grid,
                           const std::vector<StepLimit>& m_grid,
                           const CoverOptions& opts) {
  check_grids(eps_grid, m_grid);
  ScaleProfile profile;
  profile.subset = B;
  profile.rows.resize(eps_grid.size());

  // Grid rows are independent: one thresholded graph per scale. Exceptions
  // (a capacity gate, say) must not unwind through the parallel region.
  std::exception_ptr failure;
  const auto fill_row = [&](std::size_t r) {
    CoverOptions cell_opts = opts;
    cell_opts.exec = Exec::Serial;  // row-level parallelism is enough
    const auto graph = build_chain_graph(space, eps_grid[r], cell_opts.exec);
    ProfileRow& row = profile.rows[r];
    row.eps = eps_grid[r];
    row.components_met = components_met(graph, B);
    for (const StepLimit& m : m_grid) {
      const auto cover = cover_impl(graph, B, m, cell_opts);
      row.entries.push_back({m, cover.size(), cover.method});
    }
  };
  if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(eps_grid.size()); ++r) {
      try {
        fill_row(static_cast<std::size_t>(r));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    for (std::size_t r = 0; r < eps_grid.size(); ++r) fill_row(r);
  }
  if (failure) std::rethrow_exception(failure);

  // Cover sizes should not grow with depth; greedy can occasionally slip,
  // which is reported rather than patched over.
  for (const ProfileRow& row : profile.rows)
    for (std::size_t k = 1; k < row.entries.size(); ++k)
      if (row.entries[k].size > row.entries[k - 1].size)
        profile.anomalies.push_back({row.eps, row.entries[k - 1].m, row.entries[k].m,
                                     row.entries[k - 1].size, row.entries[k].size});
  return profile;
}

BornologyReport bornology_report(const FiniteMetricSpace& space,
                                 const std::vector<SubsetHandle>& subsets,
                                 const std::vector<double>& eps_grid,
                                 const std::vector<StepLimit>& m_grid,
                                 const CoverOptions& opts) {
  if (subsets.empty()) throw DomainError("bornology report needs at least one subset");
  check_grids(eps_grid, m_grid);

  BornologyReport report;
  report.eps_grid = eps_grid;
  report.m_grid = m_grid;

  for (std::size_t s = 0; s < subsets.size(); ++s) {
    SubsetReport sr;
    sr.subset = subsets[s];
    sr.diameter = diameter(space, subsets[s]);
    sr.profile = scale_profile(space, subsets[s], eps_grid, m_grid, opts);

    std::size_t divergent_cells = 0;
    std::optional<DivergenceFlag> widest;
    for (const ProfileRow& row : sr.profile.rows) {
      // Net size = the m=1 entry, when the grid has one.
      std::optional<std::size_t> net;
      for (const ProfileEntry& e : row.entries)
        if (!e.m.is_infinite() && e.m.value() == 1) net = e.size;
      if (!net) continue;
      for (const ProfileEntry& e : row.entries) {
        if (!e.m.is_infinite() && e.m.value() == 1) continue;
        if (e.size < *net) {
          const DivergenceFlag flag{s, row.eps, e.m, *net, e.size};
          report.flags.push_back(flag);
          ++divergent_cells;
          if (!widest ||
              flag.net_size - flag.chain_size > widest->net_size - widest->chain_size)
            widest = flag;
        }
      }
    }
    std::ostringstream cls;
    if (divergent_cells == 0) {
      cls << "net and chain cover profiles agree on the whole grid";
    } else {
      cls << "chain covers beat net covers at " << divergent_cells
          << " grid cell(s); largest gap at eps=" << widest->eps << ", depth ";
      if (widest->m.is_infinite())
        cls << "inf";
      else
        cls << widest->m.value();
      cls << ": " << widest->net_size << " vs " << widest->chain_size;
    }
    sr.classification = cls.str();
    report.subsets.push_back(std::move(sr));
  }
  return report;
}

std::optional<PrefixCertificate> bourbaki_cauchy_prefix(const FiniteMetricSpace& space,
                                                        const std::vector<Index>& seq,
                                                        double eps,
                                                        std::size_t min_tail) {
  if (min_tail == 0) throw DomainError("prefix diagnostic: min_tail must be positive");
  if (seq.size() < min_tail)
    throw DomainError("prefix diagnostic: sequence shorter than min_tail");
  for (Index p : seq)
    if (p >= space.size()) throw DomainError("prefix diagnostic: index out of range");

  const auto graph = build_chain_graph(space, eps);
  const std::size_t n = space.size();

  // Hop rows for the distinct sequence points.
  std::vector<Index> distinct = seq;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const auto rows = batch_hop_distances(graph, distinct);
  std::vector<const std::vector<std::size_t>*> row_of(n, nullptr);
  for (std::size_t k = 0; k < distinct.size(); ++k) row_of[distinct[k]] = &rows[k];

  // suffix_max[c] after processing seq[t..]: the depth needed for center c
  // to hold that whole tail. The minimal admissible depth over (t, c) is the
  // certificate depth; earlier tails only add constraints, so scanning tails
  // from the end keeps every candidate start available.
  const std::size_t last_start = seq.size() - min_tail;
  std::vector<std::vector<std::size_t>> suffix_max(
      last_start + 1, std::vector<std::size_t>(n, 0));
  std::vector<std::size_t> acc(n, 0);
  for (std::size_t t = seq.size(); t-- > 0;) {
    const auto& row = *row_of[seq[t]];
    for (Index c = 0; c < n; ++c)
      acc[c] = std::max(acc[c],
                        row[c] == kUnreachable ? kUnreachable : row[c]);
    if (t <= last_start) suffix_max[t] = acc;
  }

  std::size_t best = kUnreachable;
  for (std::size_t t = 0; t <= last_start; ++t)
    for (Index c = 0; c < n; ++c) best = std::min(best, suffix_max[t][c]);
  if (best == kUnreachable) return std::nullopt;

  const std::size_t m = std::max<std::size_t>(1, best);
  for (std::size_t t = 0; t <= last_start; ++t)
    for (Index c = 0; c < n; ++c)
      if (suffix_max[t][c] <= m) return PrefixCertificate{m, t, c};
  return std::nullopt;
}

OscillationResult oscillation_check(const FiniteMetricSpace& space,
                                    const std::vector<double>& f, double K, double eps,
                                    Index x, std::size_t m) {
  if (m == 0) throw DomainError("oscillation check: depth m must be at least 1");
  const auto witness = check_lipschitz_small(space, f, K, eps);
  if (!witness.ok())
    throw DomainError("oscillation check: f has no (K, eps) slope certificate (" +
                      std::to_string(witness.violations.size()) + " violating pairs)");
  const auto graph = build_chain_graph(space, eps);
  const auto ball = chain_ball(graph, x, StepLimit::finite(m));
  OscillationResult result;
  result.bound = K * static_cast<double>(m) * eps;
  for (Index y : ball.members.indices)
    result.max_oscillation = std::max(result.max_oscillation, std::abs(f[y] - f[x]));
  result.ok = result.max_oscillation <= result.bound + space.tau();
  return result;
}

}  // namespace chaincover
