#include "chaincover/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "chaincover/reference.hpp"
#include "chaincover/rho_metric.hpp"

namespace chaincover::verify {

namespace {

constexpr std::uint64_t kStride = 0x9E3779B97F4A7C15ULL;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t count) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(count)) % count;
}

std::string describe_instance(std::size_t k, const Instance& inst) {
  std::ostringstream os;
  os << "instance " << k << " (n=" << inst.space.size() << ", eps=" << inst.eps << ")";
  return os.str();
}

}  // namespace

std::mt19937_64 aux_rng(std::uint64_t seed, std::size_t k) {
  return std::mt19937_64(~seed + kStride * (2 * k + 1));
}

Instance make_instance(std::uint64_t seed, std::size_t k, std::size_t max_n) {
  std::mt19937_64 rng(seed + kStride * (k + 1));
  Instance inst{FiniteMetricSpace::from_points({{0.0}}), 0.0, {}};
  const std::size_t n = 2 + uniform_index(rng, max_n - 1);
  const std::size_t dim = 1 + uniform_index(rng, 4);
  std::vector<std::vector<double>> coords(n, std::vector<double>(dim, 0.0));
  for (auto& p : coords)
    for (auto& v : p) v = uniform01(rng);
  inst.space = FiniteMetricSpace::from_points(std::move(coords));

  const double lo = inst.space.min_positive_distance();
  const double hi = inst.space.max_distance();
  // Biased toward the low end of the distance range: small scales produce
  // several components, which is where the cross-component cases live.
  const double u = uniform01(rng);
  inst.eps = lo + u * u * (hi - lo);
  if (inst.eps <= 0.0) inst.eps = hi * 0.5;

  const auto graph = build_chain_graph(inst.space, inst.eps, Exec::Serial);
  inst.labeling_values.resize(graph.component_count());
  for (auto& v : inst.labeling_values) v = 1 + static_cast<int>(uniform_index(rng, 5));
  return inst;
}

SubsetHandle random_subset(std::mt19937_64& rng, const FiniteMetricSpace& space) {
  std::vector<Index> idx;
  for (Index x = 0; x < space.size(); ++x)
    if (uniform01(rng) < 0.5) idx.push_back(x);
  if (idx.empty()) idx.push_back(uniform_index(rng, space.size()));
  return make_subset(space, idx);
}

SuiteResult rho_triangle_axioms(const Options& opts, std::size_t max_n, double tol) {
  SuiteResult result{"rho metric axioms (symmetry, identity, triangle)", opts.instances,
                     0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto labeling = build_labeling(graph, inst.labeling_values);
    const auto rho = build_rho(labeling, {}, opts.exec);
    const auto m = rho_matrix(rho, opts.exec);
    const std::size_t n = inst.space.size();
    bool bad = false;
    for (Index x = 0; x < n && !bad; ++x) {
      if (std::abs(m[x][x]) > tol) bad = true;
      for (Index y = x + 1; y < n && !bad; ++y) {
        if (std::abs(m[x][y] - m[y][x]) > tol) bad = true;
        if (m[x][y] <= tol) bad = true;  // distinct points must be separated
      }
    }
    for (Index x = 0; x < n && !bad; ++x)
      for (Index y = 0; y < n && !bad; ++y)
        for (Index z = 0; z < n; ++z)
          if (m[x][y] > m[x][z] + m[z][y] + tol) {
            bad = true;
            break;
          }
    if (bad) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult rho_local_identity(const Options& opts, std::size_t max_n) {
  SuiteResult result{"rho and base metric uniformly locally identical",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto labeling = build_labeling(graph, inst.labeling_values);
    const auto rho = build_rho(labeling, {}, opts.exec);
    const auto violations = check_locally_identical(inst.space, rho, opts.exec);
    if (!violations.empty()) {
      ++result.failures;
      if (result.detail.empty())
        result.detail = describe_instance(k, inst) + ": " +
                        std::to_string(violations.size()) + " violating pairs";
    }
  }
  return result;
}

SuiteResult rho_rep_invariance(const Options& opts, std::size_t max_n) {
  SuiteResult result{"rho under two representative choices stays locally identical",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto labeling = build_labeling(graph, inst.labeling_values);
    const auto rho = build_rho(labeling, {}, opts.exec);
    // Alternative choice: the largest index in each component.
    std::vector<Index> alt(graph.component_count());
    for (Index c = 0; c < graph.component_count(); ++c)
      alt[c] = graph.component_members(c).back();
    const auto omega = build_rho(labeling, alt, opts.exec);
    const bool ok = check_locally_identical(inst.space, rho, opts.exec).empty() &&
                    check_locally_identical(inst.space, omega, opts.exec).empty();
    if (!ok) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult chain_distance_oracle(const Options& opts, std::size_t max_n, double tol) {
  SuiteResult result{"chain distance equals exhaustive simple-path minimum",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto relax = reference::chain_distance_relaxation(inst.space, inst.eps);
    bool bad = false;
    for (Index x = 0; x < inst.space.size() && !bad; ++x)
      for (Index y = x + 1; y < inst.space.size() && !bad; ++y) {
        const auto fast = chain_distance(graph, x, y);
        const auto slow = reference::chain_distance_simple_paths(inst.space, inst.eps, x, y);
        if (fast.has_value() != slow.has_value()) {
          bad = true;
        } else if (fast) {
          if (std::abs(*fast - *slow) > tol) bad = true;
          if (std::abs(*fast - relax[x][y]) > tol) bad = true;
        } else if (std::isfinite(relax[x][y])) {
          bad = true;
        }
      }
    if (bad) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult chain_ball_oracle(const Options& opts, std::size_t max_n) {
  SuiteResult result{"chain balls and hops match the set-expansion reference",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    auto rng = aux_rng(opts.seed, k);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const Index x = uniform_index(rng, inst.space.size());
    bool bad = false;
    for (const StepLimit m : {StepLimit::finite(1), StepLimit::finite(2),
                              StepLimit::finite(3), StepLimit::infinity()}) {
      const auto ball = chain_ball(graph, x, m);
      const auto ref = reference::chain_ball_members(inst.space, inst.eps, x, m);
      if (ball.members.indices != ref) bad = true;
    }
    for (int trial = 0; trial < 5 && !bad; ++trial) {
      const Index y = uniform_index(rng, inst.space.size());
      if (hop_distance(graph, x, y) != reference::hop_distance(inst.space, inst.eps, x, y))
        bad = true;
    }
    if (bad) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult hop_bound(const Options& opts, std::size_t max_n) {
  SuiteResult result{"hop count bounded by 2*chain_distance/eps + 1", opts.instances,
                     0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const std::size_t n = inst.space.size();
    std::vector<Index> all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    const auto hops = batch_hop_distances(graph, all, opts.exec);
    const auto dists = all_pairs_chain_distance(graph, opts.exec);
    bool bad = false;
    for (Index x = 0; x < n && !bad; ++x)
      for (Index y = 0; y < n; ++y) {
        if (hops[x][y] == kUnreachable) continue;
        const double limit = 2.0 * dists[x][y] / inst.eps + 1.0 + 1e-9;
        if (static_cast<double>(hops[x][y]) > limit) {
          bad = true;
          break;
        }
      }
    if (bad) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult metric_generators_validate(const Options& opts) {
  std::vector<SpaceSpec> specs;
  specs.push_back(parse_space_spec("discrete01:6"));
  specs.push_back(parse_space_spec("sqrt_interval:4,0.5"));
  specs.push_back(parse_space_spec("sqrt_interval:4,0.5,1"));
  specs.push_back(parse_space_spec("reciprocal_set:12"));
  specs.push_back(parse_space_spec("atsuji_pairs:6"));
  specs.push_back(parse_space_spec("orthonormal_rays:4,3"));
  specs.push_back(parse_space_spec("lattice:2,4"));
  {
    SpaceSpec cloud = parse_space_spec("random_cloud:24,3");
    cloud.seed = opts.seed;
    specs.push_back(cloud);
  }
  {
    SpaceSpec prod;
    prod.family = Family::ProductSup;
    prod.factor_a = std::make_shared<SpaceSpec>(parse_space_spec("reciprocal_set:4"));
    prod.factor_b = std::make_shared<SpaceSpec>(parse_space_spec("discrete01:3"));
    specs.push_back(prod);
  }

  SuiteResult result{"generated spaces validate; validator pinpoints defects",
                     specs.size() + 3, 0, ""};
  for (const SpaceSpec& spec : specs) {
    try {
      const auto space = generate(spec);
      const auto twin = generate(spec);
      const std::size_t n = space.size();
      std::vector<double> table(n * n);
      bool same = twin.size() == n;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          table[i * n + j] = space.dist(i, j);
          if (same && twin.dist(i, j) != space.dist(i, j)) same = false;
        }
      const auto report = validate_metric(n, table, space.tau(), opts.exec);
      if (!report.empty() || !same) {
        ++result.failures;
        if (result.detail.empty()) result.detail = spec.describe();
      }
    } catch (const Error& e) {
      ++result.failures;
      if (result.detail.empty()) result.detail = spec.describe() + ": " + e.what();
    }
  }

  // Seeded defects: the validator must find exactly these.
  {
    std::vector<double> t = {0, 1, 3, 1, 0, 1, 3, 1, 0};
    const auto report = validate_metric(3, t, 1e-9, opts.exec);
    if (!(report.triangle_violations.size() == 1 && report.symmetry_violations.empty() &&
          report.triangle_violations[0].i == 0 && report.triangle_violations[0].j == 2 &&
          report.triangle_violations[0].k == 1))
      ++result.failures;
  }
  {
    std::vector<double> t = {0, 1, 2, 0};
    const auto report = validate_metric(2, t, 1e-9, opts.exec);
    if (report.symmetry_violations.size() != 1) ++result.failures;
  }
  {
    std::vector<double> t = {0, 0, 0, 0};
    const auto report = validate_metric(2, t, 1e-9, opts.exec);
    if (report.positivity_violations.size() != 1) ++result.failures;
  }
  return result;
}

SuiteResult lemma_forward(const Options& opts, std::size_t max_n) {
  SuiteResult result{"forward bound: depth-M hulls stay within M*eps + 2K in rho",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    auto rng = aux_rng(opts.seed, k);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto labeling = build_labeling(graph, inst.labeling_values);
    const auto rho = build_rho(labeling, {}, opts.exec);
    std::vector<Index> F;
    for (Index c = 0; c < graph.component_count(); ++c)
      if (uniform01(rng) < 0.5) F.push_back(c);
    if (F.empty()) F.push_back(uniform_index(rng, graph.component_count()));
    const Index j = F[uniform_index(rng, F.size())];
    const std::size_t M = 1 + uniform_index(rng, 4);
    const auto bound = rho_bounded_forward_bound(rho, F, M, j);
    if (!bound.ok()) {
      ++result.failures;
      if (result.detail.empty())
        result.detail = describe_instance(k, inst) + ": " +
                        std::to_string(bound.violations.size()) + " violations of " +
                        std::to_string(bound.bound);
    }
  }
  return result;
}

SuiteResult lemma_reverse(const Options& opts, std::size_t max_n) {
  SuiteResult result{"reverse cover: (F, M) certificate from a rho bound verifies",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    auto rng = aux_rng(opts.seed, k);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto labeling = build_labeling(graph, inst.labeling_values);
    const auto rho = build_rho(labeling, {}, opts.exec);
    const auto B = random_subset(rng, inst.space);
    const Index anchor = rho.representative(graph.component_of(B.indices.front()));
    double max_rho = 0.0;
    for (Index x : B.indices) max_rho = std::max(max_rho, rho.value(x, anchor));
    const double R = max_rho + 0.1 + 2.0 * uniform01(rng);
    const auto cert = rho_bounded_reverse_cover(rho, B, R);
    if (!cert.uncovered.empty()) {
      ++result.failures;
      if (result.detail.empty())
        result.detail = describe_instance(k, inst) + ": " +
                        std::to_string(cert.uncovered.size()) + " uncovered at M=" +
                        std::to_string(cert.M);
    }
  }
  return result;
}

SuiteResult labeling_image_bound(const Options& opts, std::size_t max_n) {
  SuiteResult result{"labeling image on B bounded by components met, tight adversarially",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    auto rng = aux_rng(opts.seed, k);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto B = random_subset(rng, inst.space);
    const std::size_t met = components_met(graph, B);
    bool bad = false;
    const auto image_size = [&](const ComponentLabeling& labeling) {
      const auto f = as_point_function(labeling);
      std::set<int> values;
      for (Index x : B.indices) values.insert(f[x]);
      return values.size();
    };
    for (int trial = 0; trial < 10 && !bad; ++trial) {
      std::vector<int> values(graph.component_count());
      for (auto& v : values) v = 1 + static_cast<int>(uniform_index(rng, 5));
      if (image_size(build_labeling(graph, values)) > met) bad = true;
    }
    if (image_size(adversarial_labeling(graph, B)) != met) bad = true;
    if (bad) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult cover_size_chain(const Options& opts, std::size_t max_n) {
  SuiteResult result{
      "exact covers shrink with depth down to the component count; greedy within "
      "(1+ln|B|) of exact; exact equals brute force",
      opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    auto rng = aux_rng(opts.seed, k);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto B = random_subset(rng, inst.space);

    CoverOptions exact{CoverMethod::Exact, 14, opts.exec};
    CoverOptions greedy{CoverMethod::Greedy, 14, opts.exec};
    bool bad = false;
    std::vector<std::size_t> exact_sizes;
    for (const std::size_t depth : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
      const StepLimit m = StepLimit::finite(depth);
      const auto ex = chain_cover(graph, B, m, exact);
      const auto gr = chain_cover(graph, B, m, greedy);
      exact_sizes.push_back(ex.size());
      const double factor = 1.0 + std::log(static_cast<double>(B.size()));
      if (static_cast<double>(gr.size()) > factor * static_cast<double>(ex.size()))
        bad = true;
      if (reference::min_cover_size_brute(inst.space, inst.eps, B, m) != ex.size())
        bad = true;
    }
    const std::size_t met = components_met(graph, B);
    if (!(exact_sizes[0] >= exact_sizes[1] && exact_sizes[1] >= exact_sizes[2] &&
          exact_sizes[2] >= met))
      bad = true;
    if (bad) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult rays_example() {
  SuiteResult result{
      "orthonormal rays: tips need 8 net centers but one depth-3 chain center",
      1, 0, ""};
  const auto space = generate(parse_space_spec("orthonormal_rays:8,3"));
  std::vector<Index> tips;
  for (Index i = 0; i < 8; ++i) tips.push_back(3 * i + 3);
  const auto B = make_subset(space, tips);
  const double eps = 0.8;

  const auto graph = build_chain_graph(space, eps);
  CoverOptions exact{CoverMethod::Exact, 14, Exec::Parallel};
  const auto net = chain_cover(graph, B, StepLimit::finite(1), exact);
  const auto chain3_greedy = chain_cover(graph, B, StepLimit::finite(3), {});
  const auto chain3_exact = chain_cover(graph, B, StepLimit::finite(3), exact);
  const std::size_t met = components_met(graph, B);
  const std::size_t brute_net =
      reference::min_cover_size_brute(space, eps, B, StepLimit::finite(1));

  // All depth-3 candidates reach every tip, so the tie-break must pick the
  // origin (index 0).
  if (!(net.size() == 8 && brute_net == 8 && chain3_greedy.size() == 1 &&
        chain3_greedy.centers == std::vector<Index>{0} && chain3_exact.size() == 1 &&
        met == 1)) {
    result.failures = 1;
    std::ostringstream os;
    os << "net=" << net.size() << " brute=" << brute_net
       << " chain3=" << chain3_greedy.size() << " met=" << met;
    result.detail = os.str();
  }
  return result;
}

SuiteResult reciprocal_net_stability() {
  SuiteResult result{"reciprocal grid: greedy net size stable under tail refinement",
                     1, 0, ""};
  const double eps = 0.1;
  const auto small = generate(parse_space_spec("reciprocal_set:50"));
  const auto large = generate(parse_space_spec("reciprocal_set:200"));
  const auto cover_small = net_cover(small, full_subset(small), eps, {});
  const auto cover_large = net_cover(large, full_subset(large), eps, {});
  if (cover_small.size() != cover_large.size()) {
    result.failures = 1;
    result.detail = "k=50 -> " + std::to_string(cover_small.size()) +
                    ", k=200 -> " + std::to_string(cover_large.size());
  }
  return result;
}

SuiteResult oscillation_bound(const Options& opts, std::size_t max_n) {
  SuiteResult result{"oscillation of rho(., x0) over depth-m balls within m*eps",
                     opts.instances, 0, ""};
  for (std::size_t k = 0; k < opts.instances; ++k) {
    const Instance inst = make_instance(opts.seed, k, max_n);
    const auto graph = build_chain_graph(inst.space, inst.eps, opts.exec);
    const auto labeling = build_labeling(graph, inst.labeling_values);
    const auto rho = build_rho(labeling, {}, opts.exec);
    const std::size_t n = inst.space.size();
    std::vector<double> f(n);
    for (Index y = 0; y < n; ++y) f[y] = rho.value(0, y);

    bool bad = !check_lipschitz_small(inst.space, f, 1.0, inst.eps, opts.exec).ok();
    if (!bad) {
      std::vector<Index> all(n);
      for (Index i = 0; i < n; ++i) all[i] = i;
      const auto hops = batch_hop_distances(graph, all, opts.exec);
      for (Index x = 0; x < n && !bad; ++x)
        for (std::size_t m = 1; m <= 4 && !bad; ++m) {
          double osc = 0.0;
          for (Index y = 0; y < n; ++y)
            if (hops[x][y] != kUnreachable && hops[x][y] <= m)
              osc = std::max(osc, std::abs(f[y] - f[x]));
          if (osc > static_cast<double>(m) * inst.eps + inst.space.tau()) bad = true;
        }
      // Exercise the public check on one sampled pair as well.
      auto rng = aux_rng(opts.seed, k);
      const auto spot = oscillation_check(inst.space, f, 1.0, inst.eps,
                                          uniform_index(rng, n),
                                          1 + uniform_index(rng, 4));
      if (!spot.ok) bad = true;
    }
    if (bad) {
      ++result.failures;
      if (result.detail.empty()) result.detail = describe_instance(k, inst);
    }
  }
  return result;
}

SuiteResult sqrt_ball_inclusion() {
  SuiteResult result{"sqrt-interval ball inclusion maps r to r^2", 10, 0, ""};
  const auto [usual, sqrt_metric] = generate_sqrt_interval(100.0, 0.25);
  std::vector<double> radii;
  for (int r = 1; r <= 10; ++r) radii.push_back(static_cast<double>(r));
  const auto map = ball_inclusion_map(usual, sqrt_metric, 0, radii);
  for (const auto& [r, R] : map) {
    if (std::abs(R - r * r) > 0.25 + 1e-9) {
      ++result.failures;
      if (result.detail.empty())
        result.detail = "r=" + std::to_string(r) + " gave R=" + std::to_string(R);
    }
  }
  return result;
}

std::vector<std::string> suite_names() {
  return {"metric", "rho", "lemma", "cover", "oscillation"};
}

bool is_suite_name(const std::string& name) {
  if (name == "all") return true;
  const auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<SuiteResult> run_suites(const std::string& which, const Options& opts) {
  if (!is_suite_name(which)) throw DomainError("unknown suite: " + which);
  std::vector<SuiteResult> results;
  const bool all = which == "all";

  if (all || which == "metric") {
    results.push_back(metric_generators_validate(opts));
    Options small = opts;
    small.instances = std::min<std::size_t>(opts.instances, 100);
    results.push_back(chain_distance_oracle(small));
    results.push_back(chain_ball_oracle(small));
    results.push_back(hop_bound(opts));
    results.push_back(sqrt_ball_inclusion());
  }
  if (all || which == "rho") {
    results.push_back(rho_triangle_axioms(opts));
    results.push_back(rho_local_identity(opts));
    results.push_back(rho_rep_invariance(opts));
  }
  if (all || which == "lemma") {
    results.push_back(lemma_forward(opts));
    results.push_back(lemma_reverse(opts));
    results.push_back(labeling_image_bound(opts));
  }
  if (all || which == "cover") {
    Options small = opts;
    small.instances = std::min<std::size_t>(opts.instances, 50);
    results.push_back(cover_size_chain(small));
    results.push_back(rays_example());
    results.push_back(reciprocal_net_stability());
  }
  if (all || which == "oscillation") {
    results.push_back(oscillation_bound(opts));
  }
  return results;
}

}  // namespace chaincover::verify
