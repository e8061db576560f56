// Times the serial reference paths of the data-parallel kernels against
// their OpenMP variants on mid-size instances and reports the speedup.

#include <chrono>
#include <cstdio>
#include <random>

#include "chaincover/chain_graph.hpp"
#include "chaincover/rho_metric.hpp"
#include "chaincover/spaces.hpp"

namespace cc = chaincover;

namespace {

double seconds(const std::chrono::steady_clock::time_point& a,
               const std::chrono::steady_clock::time_point& b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return seconds(t0, t1);
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-36s serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n", name, serial,
              parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  cc::SpaceSpec cloud_spec = cc::parse_space_spec("random_cloud:1500,4");
  cloud_spec.seed = 42;

  // Pairwise-distance table construction.
  std::mt19937_64 rng(7);
  std::vector<std::vector<double>> coords(2500, std::vector<double>(8, 0.0));
  for (auto& p : coords)
    for (auto& v : p) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double t_serial = timed([&] {
    auto s = cc::FiniteMetricSpace::from_points(coords, cc::PointMetric::Euclidean, {},
                                                cc::Exec::Serial);
    (void)s;
  });
  double t_parallel = timed([&] {
    auto s = cc::FiniteMetricSpace::from_points(coords, cc::PointMetric::Euclidean, {},
                                                cc::Exec::Parallel);
    (void)s;
  });
  report("distance table (n=2500, d=8)", t_serial, t_parallel);

  // Metric-axiom triple scan.
  const auto cloud = cc::generate(cloud_spec);
  {
    const std::size_t n = 700;
    std::vector<double> table(n * n);
    for (cc::Index i = 0; i < n; ++i)
      for (cc::Index j = 0; j < n; ++j) table[i * n + j] = cloud.dist(i, j);
    t_serial = timed([&] { cc::validate_metric(n, table, 1e-9, cc::Exec::Serial); });
    t_parallel = timed([&] { cc::validate_metric(n, table, 1e-9, cc::Exec::Parallel); });
    report("metric validation (n=700)", t_serial, t_parallel);
  }

  // Threshold-graph adjacency.
  const double eps = 0.35;
  t_serial = timed([&] { cc::build_chain_graph(cloud, eps, cc::Exec::Serial); });
  t_parallel = timed([&] { cc::build_chain_graph(cloud, eps, cc::Exec::Parallel); });
  report("chain graph build (n=1500)", t_serial, t_parallel);

  // Multi-source traversals.
  const auto graph = cc::build_chain_graph(cloud, eps);
  t_serial = timed([&] { cc::all_pairs_chain_distance(graph, cc::Exec::Serial); });
  t_parallel = timed([&] { cc::all_pairs_chain_distance(graph, cc::Exec::Parallel); });
  report("all-pairs chain distance", t_serial, t_parallel);

  std::vector<cc::Index> sources(graph.size());
  for (cc::Index i = 0; i < sources.size(); ++i) sources[i] = i;
  t_serial = timed([&] { cc::batch_hop_distances(graph, sources, cc::Exec::Serial); });
  t_parallel = timed([&] { cc::batch_hop_distances(graph, sources, cc::Exec::Parallel); });
  report("batch hop distances", t_serial, t_parallel);

  // Derived-metric build and pair scan.
  const auto labeling = cc::build_labeling(graph, std::vector<int>(graph.component_count(), 1));
  t_serial = timed([&] {
    const auto rho = cc::build_rho(labeling, {}, cc::Exec::Serial);
    cc::check_locally_identical(cloud, rho, cc::Exec::Serial);
  });
  t_parallel = timed([&] {
    const auto rho = cc::build_rho(labeling, {}, cc::Exec::Parallel);
    cc::check_locally_identical(cloud, rho, cc::Exec::Parallel);
  });
  report("rho build + local-identity scan", t_serial, t_parallel);

  return 0;
}
