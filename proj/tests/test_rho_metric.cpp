#include "doctest.h"

#include <cmath>
#include <set>

#include "chaincover/covers.hpp"
#include "chaincover/reference.hpp"
#include "chaincover/rho_metric.hpp"
#include "chaincover/spaces.hpp"
#include "test_helpers.hpp"

using namespace chaincover;
using test_helpers::line_space;
using test_helpers::random_cloud;

TEST_CASE("labelings take one positive value per component") {
  const auto space = generate(parse_space_spec("discrete01:3"));
  const auto graph = build_chain_graph(space, 0.5);
  CHECK_NOTHROW(build_labeling(graph, {1, 1, 1}));
  CHECK_NOTHROW(build_labeling(graph, {1, 2, 3}));
  CHECK_THROWS_AS(build_labeling(graph, {1, 0, 1}), DomainError);
  CHECK_THROWS_AS(build_labeling(graph, {1, 1}), DomainError);
}

TEST_CASE("point functions are constant on components") {
  const auto space = line_space({0.0, 0.2, 5.0, 5.2, 9.0});
  const auto graph = build_chain_graph(space, 0.5);
  REQUIRE(graph.component_count() == 3);
  const auto labeling = build_labeling(graph, {1, 2, 3});
  const auto f = as_point_function(labeling);
  CHECK(f == std::vector<int>{1, 1, 2, 2, 3});
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = 0; y < space.size(); ++y)
      if (space.dist(x, y) < 0.5) CHECK(f[x] == f[y]);
}

TEST_CASE("rho pads across components with both labels") {
  const auto space = line_space({0.0, 10.0});
  const auto graph = build_chain_graph(space, 1.0);
  const auto labeling = build_labeling(graph, {1, 2});
  const auto rho = build_rho(labeling);
  CHECK(rho.value(0, 1) == doctest::Approx(3.0));  // 0 + 1 + 0 + 2
  CHECK(rho.value(0, 0) == 0.0);
}

TEST_CASE("rho equals the base metric on short pairs") {
  std::mt19937_64 rng(67);
  const auto space = random_cloud(rng, 18, 2);
  const double eps = 0.35;
  const auto graph = build_chain_graph(space, eps);
  const auto labeling = build_labeling(graph, std::vector<int>(graph.component_count(), 2));
  const auto rho = build_rho(labeling);
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = 0; y < space.size(); ++y)
      if (space.dist(x, y) < eps)
        CHECK(rho.value(x, y) == doctest::Approx(space.dist(x, y)).epsilon(1e-12));
}

TEST_CASE("rho satisfies the metric axioms") {
  std::mt19937_64 rng(71);
  const auto space = random_cloud(rng, 16, 3);
  const auto graph = build_chain_graph(space, 0.5);
  std::vector<int> values(graph.component_count());
  for (auto& v : values) v = 1 + static_cast<int>(rng() % 5);
  const auto rho = build_rho(build_labeling(graph, values));
  const auto m = rho_matrix(rho);
  const std::size_t n = space.size();
  std::vector<double> flat(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) flat[i * n + j] = m[i][j];
  CHECK(validate_metric(n, flat, 1e-9).empty());
}

TEST_CASE("cross-component rho matches an independent recomputation") {
  std::mt19937_64 rng(73);
  const auto space = random_cloud(rng, 14, 2);
  const double eps = 0.3;
  const auto graph = build_chain_graph(space, eps);
  std::vector<int> values(graph.component_count());
  for (auto& v : values) v = 1 + static_cast<int>(rng() % 4);
  const auto labeling = build_labeling(graph, values);
  const auto rho = build_rho(labeling);
  // relaxation route for the chain distances
  const auto relax = reference::chain_distance_relaxation(space, eps);
  for (Index x = 0; x < space.size(); ++x)
    for (Index y = 0; y < space.size(); ++y) {
      const Index cx = graph.component_of(x);
      const Index cy = graph.component_of(y);
      if (cx == cy) {
        // within a component rho is the chain metric itself
        CHECK(rho.value(x, y) == doctest::Approx(relax[x][y]).epsilon(1e-10));
        continue;
      }
      const double expect = relax[x][graph.representative(cx)] + values[cx] +
                            relax[y][graph.representative(cy)] + values[cy];
      CHECK(rho.value(x, y) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("rho_matrix agrees with the query path on both cache branches") {
  std::mt19937_64 rng(211);
  std::vector<std::vector<double>> coords(12, std::vector<double>(2, 0.0));
  for (auto& p : coords)
    for (auto& v : p) v = test_helpers::uniform01(rng);

  SpaceOptions lazy_opts;
  lazy_opts.dense_limit = 4;  // forces the uncached branch
  const auto lazy = FiniteMetricSpace::from_points(coords, PointMetric::Euclidean, lazy_opts);
  const auto dense = FiniteMetricSpace::from_points(coords);

  for (const FiniteMetricSpace* space : {&lazy, &dense}) {
    const auto graph = build_chain_graph(*space, 0.4);
    std::vector<int> values(graph.component_count());
    for (auto& v : values) v = 1 + static_cast<int>(rng() % 3);
    const auto rho = build_rho(build_labeling(graph, values));
    CHECK(rho.caches_pairs() == (space == &dense));
    const auto m = rho_matrix(rho);
    for (Index x = 0; x < space->size(); ++x)
      for (Index y = 0; y < space->size(); ++y)
        CHECK(m[x][y] == doctest::Approx(rho.value(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("representative overrides must live in their component") {
  const auto space = line_space({0.0, 0.2, 5.0});
  const auto graph = build_chain_graph(space, 0.5);
  REQUIRE(graph.component_count() == 2);
  const auto labeling = build_labeling(graph, {1, 1});
  CHECK_NOTHROW(build_rho(labeling, std::vector<Index>{1, 2}));
  CHECK_THROWS_AS(build_rho(labeling, std::vector<Index>{2, 0}), DomainError);
  CHECK_THROWS_AS(build_rho(labeling, std::vector<Index>{0}), DomainError);
}

TEST_CASE("two representative choices are both locally identical to the base") {
  std::mt19937_64 rng(79);
  const auto space = random_cloud(rng, 20, 2);
  const double eps = 0.3;
  const auto graph = build_chain_graph(space, eps);
  std::vector<int> values(graph.component_count());
  for (auto& v : values) v = 1 + static_cast<int>(rng() % 5);
  const auto labeling = build_labeling(graph, values);

  const auto rho = build_rho(labeling);
  std::vector<Index> alt(graph.component_count());
  for (Index c = 0; c < graph.component_count(); ++c)
    alt[c] = graph.component_members(c).back();
  const auto omega = build_rho(labeling, alt);

  CHECK(check_locally_identical(space, rho).empty());
  CHECK(check_locally_identical(space, omega).empty());
}

TEST_CASE("local identity checker flags scaled metrics") {
  const auto space = line_space({0.0, 0.1, 0.2, 5.0});
  const double eps = 0.5;
  CHECK(check_locally_identical(
            space, [&](Index x, Index y) { return space.dist(x, y); }, eps)
            .empty());
  const auto violations = check_locally_identical(
      space, [&](Index x, Index y) { return 2.0 * space.dist(x, y); }, eps);
  CHECK(!violations.empty());
  CHECK_THROWS_AS(check_locally_identical(
                      space, [&](Index x, Index y) { return space.dist(x, y); }, 0.0),
                  DomainError);
}

TEST_CASE("slope certificates") {
  SUBCASE("distance to a point is globally 1-Lipschitz") {
    std::mt19937_64 rng(83);
    const auto space = random_cloud(rng, 15, 3);
    std::vector<double> f(space.size());
    for (Index y = 0; y < space.size(); ++y) f[y] = space.dist(3, y);
    CHECK(check_lipschitz_small(space, f, 1.0, 10.0).ok());
  }

  SUBCASE("sqrt is not Lipschitz near zero") {
    const auto [usual, sq] = generate_sqrt_interval(100.0, 0.25);
    std::vector<double> f(usual.size());
    for (Index y = 0; y < usual.size(); ++y) f[y] = sq.dist(0, y);  // sqrt(y * 0.25)
    const auto witness = check_lipschitz_small(usual, f, 1.0, 1.0);
    REQUIRE(!witness.ok());
    // the first grid step is a witness: |sqrt(0.25) - 0| = 0.5 > 0.25
    bool found = false;
    for (const auto& v : witness.violations)
      if (v.x == 0 && v.y == 1) found = true;
    CHECK(found);
  }

  SUBCASE("rho distance to a point is 1-Lipschitz below the scale") {
    std::mt19937_64 rng(89);
    const auto space = random_cloud(rng, 18, 2);
    const double eps = 0.4;
    const auto graph = build_chain_graph(space, eps);
    const auto rho =
        build_rho(build_labeling(graph, std::vector<int>(graph.component_count(), 3)));
    std::vector<double> f(space.size());
    for (Index y = 0; y < space.size(); ++y) f[y] = rho.value(0, y);
    CHECK(check_lipschitz_small(space, f, 1.0, eps).ok());
  }
}

TEST_CASE("adversarial labelings separate exactly the components met") {
  const auto space = line_space({0.0, 0.1, 3.0, 3.1, 6.0, 9.0, 9.1, 12.0});
  const auto graph = build_chain_graph(space, 0.5);
  REQUIRE(graph.component_count() == 5);

  SUBCASE("subset inside one component") {
    const auto B = make_subset(space, {0, 1});
    const auto f = as_point_function(adversarial_labeling(graph, B));
    CHECK(f[0] == 1);
    CHECK(f[1] == 1);
  }

  SUBCASE("subset meeting three of five components") {
    const auto B = make_subset(space, {0, 2, 3, 7});
    const auto labeling = adversarial_labeling(graph, B);
    const auto f = as_point_function(labeling);
    std::set<int> image;
    for (Index x : B.indices) image.insert(f[x]);
    CHECK(image.size() == 3);
    CHECK(components_met(graph, B) == 3);
  }

  SUBCASE("random subsets hit the component count exactly") {
    std::mt19937_64 rng(97);
    const auto cloud = random_cloud(rng, 20, 2);
    const auto g = build_chain_graph(cloud, 0.3);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Index> idx;
      for (Index x = 0; x < cloud.size(); ++x)
        if (rng() % 2) idx.push_back(x);
      if (idx.empty()) idx.push_back(0);
      const auto B = make_subset(cloud, idx);
      const auto f = as_point_function(adversarial_labeling(g, B));
      std::set<int> image;
      for (Index x : B.indices) image.insert(f[x]);
      CHECK(image.size() == components_met(g, B));
    }
  }
}
