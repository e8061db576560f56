#include "doctest.h"

#include <cmath>

#include "chaincover/covers.hpp"
#include "chaincover/reference.hpp"
#include "chaincover/spaces.hpp"
#include "test_helpers.hpp"

using namespace chaincover;
using test_helpers::line_space;
using test_helpers::random_cloud;

TEST_CASE("net covers on the unit line") {
  const auto space = line_space({0, 1, 2, 3, 4});
  const auto B = full_subset(space);

  CoverOptions exact{CoverMethod::Exact, 14, Exec::Serial};
  const auto cover = net_cover(space, B, 1.1, exact);
  CHECK(cover.size() == 2);
  CHECK(reference::min_cover_size_brute(space, 1.1, B, StepLimit::finite(1)) == 2);

  CHECK(net_cover(space, B, 10.0, {}).size() == 1);

  const auto single = net_cover(space, make_subset(space, {0}), 0.5, {});
  CHECK(single.size() == 1);
  CHECK(single.centers == std::vector<Index>{0});
}

TEST_CASE("chain cover on the unit line collapses to the midpoint") {
  const auto space = line_space({0, 1, 2, 3, 4});
  const auto cover = chain_cover(space, full_subset(space), 1.1, StepLimit::finite(2), {});
  CHECK(cover.size() == 1);
  CHECK(cover.centers == std::vector<Index>{2});
}

TEST_CASE("greedy ties resolve to the smallest center index") {
  const auto space = line_space({0.0, 1.0});
  const auto cover = net_cover(space, full_subset(space), 1.5, {});
  CHECK(cover.centers == std::vector<Index>{0});
}

TEST_CASE("infinite depth selects one representative per component met") {
  const auto space = generate(parse_space_spec("discrete01:5"));
  const auto B = make_subset(space, {1, 3, 4});
  const auto cover = chain_cover(space, B, 0.5, StepLimit::infinity(), {});
  CHECK(cover.size() == 3);
  CHECK(cover.centers == std::vector<Index>{1, 3, 4});
  const auto graph = build_chain_graph(space, 0.5);
  CHECK(components_met(graph, B) == 3);
}

TEST_CASE("exact search is gated by the candidate-pattern limit") {
  const auto space = line_space({0, 1, 2, 3, 4, 5, 6, 7});
  CoverOptions tight{CoverMethod::Exact, 3, Exec::Serial};
  CHECK_THROWS_AS(net_cover(space, full_subset(space), 1.1, tight), CapacityError);

  // the same gate must surface through a parallel profile run
  CoverOptions tight_parallel{CoverMethod::Exact, 3, Exec::Parallel};
  CHECK_THROWS_AS(scale_profile(space, full_subset(space), {0.6, 1.1},
                                {StepLimit::finite(1)}, tight_parallel),
                  CapacityError);
}

TEST_CASE("exact equals brute force; greedy within the log factor") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 8; ++trial) {
    const auto space = random_cloud(rng, 11, 2);
    const double eps = 0.25 + 0.05 * trial;
    const auto B = full_subset(space);
    for (const std::size_t depth : {std::size_t{1}, std::size_t{2}}) {
      const StepLimit m = StepLimit::finite(depth);
      const auto ex = chain_cover(space, B, eps, m, {CoverMethod::Exact, 14, Exec::Serial});
      const auto gr = chain_cover(space, B, eps, m, {});
      CHECK(ex.size() == reference::min_cover_size_brute(space, eps, B, m));
      CHECK(static_cast<double>(gr.size()) <=
            (1.0 + std::log(static_cast<double>(B.size()))) *
                static_cast<double>(ex.size()));
      CHECK(ex.size() <= gr.size());
    }
  }
}

TEST_CASE("forward bound holds with zero violations") {
  SUBCASE("single component, unit labels, one hop") {
    const auto space = line_space({0.0, 0.3, 0.6});
    const auto graph = build_chain_graph(space, 0.5);
    REQUIRE(graph.component_count() == 1);
    const auto rho = build_rho(build_labeling(graph, {1}));
    const auto result = rho_bounded_forward_bound(rho, {0}, 1, 0);
    CHECK(result.bound == doctest::Approx(0.5 + 2.0));
    CHECK(result.ok());
    CHECK(result.checked > 0);
  }

  SUBCASE("two components at depth two") {
    const auto space = line_space({0.0, 0.3, 5.0, 5.3});
    const auto graph = build_chain_graph(space, 0.5);
    REQUIRE(graph.component_count() == 2);
    const auto rho = build_rho(build_labeling(graph, {1, 1}));
    const auto result = rho_bounded_forward_bound(rho, {0, 1}, 2, 1);
    CHECK(result.bound == doctest::Approx(2.0 * 0.5 + 2.0));
    CHECK(result.ok());
  }

  SUBCASE("j outside F is rejected") {
    const auto space = line_space({0.0, 5.0});
    const auto graph = build_chain_graph(space, 0.5);
    const auto rho = build_rho(build_labeling(graph, {1, 1}));
    CHECK_THROWS_AS(rho_bounded_forward_bound(rho, {0}, 1, 1), DomainError);
  }

  SUBCASE("random instances") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 10; ++trial) {
      const auto space = random_cloud(rng, 16, 2);
      const auto graph = build_chain_graph(space, 0.3);
      std::vector<int> values(graph.component_count());
      for (auto& v : values) v = 1 + static_cast<int>(rng() % 5);
      const auto rho = build_rho(build_labeling(graph, values));
      std::vector<Index> F;
      for (Index c = 0; c < graph.component_count(); ++c)
        if (rng() % 2) F.push_back(c);
      if (F.empty()) F.push_back(0);
      const std::size_t M = 1 + rng() % 4;
      CHECK(rho_bounded_forward_bound(rho, F, M, F[rng() % F.size()]).ok());
    }
  }
}

TEST_CASE("reverse cover certificates") {
  SUBCASE("anchor representative alone") {
    const auto space = line_space({0.0, 5.0});
    const auto graph = build_chain_graph(space, 0.5);
    const auto rho = build_rho(build_labeling(graph, {1, 1}));
    const auto B = make_subset(space, {0});
    const auto cert = rho_bounded_reverse_cover(rho, B, 1.0);
    CHECK(cert.components == std::vector<Index>{0});
    CHECK(cert.uncovered.empty());
  }

  SUBCASE("violated precondition names the offender") {
    const auto space = line_space({0.0, 5.0});
    const auto graph = build_chain_graph(space, 0.5);
    const auto rho = build_rho(build_labeling(graph, {1, 1}));
    const auto B = full_subset(space);
    // rho(1, rep0) = 0 + 1 + 0 + 1 = 2 >= 0.5
    CHECK_THROWS_WITH_AS(rho_bounded_reverse_cover(rho, B, 0.5),
                         doctest::Contains("point 1"), DomainError);
  }

  SUBCASE("single-component line with a generous bound") {
    const auto space = line_space({0.0, 0.4, 0.8, 1.2});
    const auto graph = build_chain_graph(space, 0.5);
    const auto rho = build_rho(build_labeling(graph, {2}));
    const auto B = full_subset(space);
    double max_rho = 0.0;
    for (Index x : B.indices) max_rho = std::max(max_rho, rho.value(x, 0));
    const auto cert = rho_bounded_reverse_cover(rho, B, max_rho + 0.01);
    CHECK(cert.uncovered.empty());
    CHECK(cert.M >= 1);
  }

  SUBCASE("random multi-component instances always verify") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 15; ++trial) {
      const auto space = random_cloud(rng, 14, 2);
      const auto graph = build_chain_graph(space, 0.28);
      std::vector<int> values(graph.component_count());
      for (auto& v : values) v = 1 + static_cast<int>(rng() % 5);
      const auto rho = build_rho(build_labeling(graph, values));
      std::vector<Index> idx;
      for (Index x = 0; x < space.size(); ++x)
        if (rng() % 2) idx.push_back(x);
      if (idx.empty()) idx.push_back(2);
      const auto B = make_subset(space, idx);
      const Index anchor = rho.representative(graph.component_of(B.indices.front()));
      double max_rho = 0.0;
      for (Index x : B.indices) max_rho = std::max(max_rho, rho.value(x, anchor));
      const auto cert = rho_bounded_reverse_cover(rho, B, max_rho + 0.5);
      CHECK(cert.uncovered.empty());
    }
  }
}

TEST_CASE("scale profiles") {
  SUBCASE("singleton subsets are covered by one ball everywhere") {
    const auto space = line_space({0, 1, 2, 3});
    const auto profile =
        scale_profile(space, make_subset(space, {2}), {0.5, 1.5},
                      {StepLimit::finite(1), StepLimit::infinity()}, {});
    for (const auto& row : profile.rows)
      for (const auto& e : row.entries) CHECK(e.size == 1);
  }

  SUBCASE("discrete metric flips from k covers to one") {
    const auto space = generate(parse_space_spec("discrete01:6"));
    const auto profile =
        scale_profile(space, full_subset(space), {0.5, 1.5},
                      {StepLimit::finite(1), StepLimit::finite(2), StepLimit::infinity()},
                      {});
    REQUIRE(profile.rows.size() == 2);
    for (const auto& e : profile.rows[0].entries) CHECK(e.size == 6);
    CHECK(profile.rows[0].components_met == 6);
    for (const auto& e : profile.rows[1].entries) CHECK(e.size == 1);
    CHECK(profile.rows[1].components_met == 1);
  }

  SUBCASE("infinite-depth entries equal the component count") {
    std::mt19937_64 rng(113);
    const auto space = random_cloud(rng, 18, 2);
    const auto B = full_subset(space);
    const auto profile = scale_profile(space, B, {0.2, 0.35, 0.5},
                                       {StepLimit::finite(1), StepLimit::infinity()}, {});
    for (const auto& row : profile.rows) {
      const auto graph = build_chain_graph(space, row.eps);
      CHECK(row.components_met == components_met(graph, B));
      CHECK(row.entries.back().size == row.components_met);
    }
  }

  SUBCASE("grids must ascend") {
    const auto space = line_space({0, 1});
    CHECK_THROWS_AS(scale_profile(space, full_subset(space), {0.5, 0.5},
                                  {StepLimit::finite(1)}, {}),
                    DomainError);
    CHECK_THROWS_AS(scale_profile(space, full_subset(space), {0.5},
                                  {StepLimit::finite(2), StepLimit::finite(2)}, {}),
                    DomainError);
  }
}

TEST_CASE("bornology report flags the rays divergence") {
  const auto space = generate(parse_space_spec("orthonormal_rays:8,3"));
  std::vector<Index> tips;
  for (Index i = 0; i < 8; ++i) tips.push_back(3 * i + 3);
  const auto B = make_subset(space, tips);
  const auto report = bornology_report(
      space, {B}, {0.8}, {StepLimit::finite(1), StepLimit::finite(3)}, {});
  REQUIRE(report.subsets.size() == 1);
  CHECK(report.subsets[0].diameter == doctest::Approx(std::sqrt(2.0)));
  REQUIRE(!report.flags.empty());
  CHECK(report.flags[0].net_size == 8);
  CHECK(report.flags[0].chain_size == 1);
  CHECK(report.subsets[0].classification.find("chain covers beat net covers") !=
        std::string::npos);
}

TEST_CASE("bornology report on singletons has no divergences") {
  const auto space = line_space({0, 1, 2});
  const auto report = bornology_report(
      space, {make_subset(space, {0}), make_subset(space, {2})}, {0.5, 1.5},
      {StepLimit::finite(1), StepLimit::finite(2)}, {});
  CHECK(report.flags.empty());
  for (const auto& sr : report.subsets)
    CHECK(sr.classification.find("agree") != std::string::npos);
}

TEST_CASE("prefix diagnostic") {
  SUBCASE("constant sequences certify at depth one") {
    const auto space = generate(parse_space_spec("discrete01:4"));
    const std::vector<Index> seq(6, 2);
    const auto cert = bourbaki_cauchy_prefix(space, seq, 0.5, 5);
    REQUIRE(cert.has_value());
    CHECK(cert->m == 1);
    CHECK(cert->tail_start == 0);
    CHECK(cert->center == 2);
  }

  SUBCASE("alternating across components never certifies") {
    const auto space = line_space({0.0, 10.0});
    const std::vector<Index> seq = {0, 1, 0, 1, 0, 1};
    CHECK(!bourbaki_cauchy_prefix(space, seq, 1.0, 2).has_value());
  }

  SUBCASE("the reciprocal tail certifies at depth one") {
    const auto space = generate(parse_space_spec("reciprocal_set:20"));
    std::vector<Index> seq(20);
    for (Index k = 0; k < 20; ++k) seq[k] = k;  // 1/1, 1/2, ..., 1/20
    const auto cert = bourbaki_cauchy_prefix(space, seq, 0.1, 5);
    REQUIRE(cert.has_value());
    CHECK(cert->m == 1);
    // exhaustive check that the certificate is honest
    const auto graph = build_chain_graph(space, 0.1);
    const auto ball = chain_ball(graph, cert->center, StepLimit::finite(cert->m));
    for (std::size_t k = cert->tail_start; k < seq.size(); ++k)
      CHECK(ball.members.contains(seq[k]));
    CHECK(seq.size() - cert->tail_start >= 5);
  }

  SUBCASE("eventually constant sequences certify at depth one") {
    const auto space = line_space({0.0, 10.0, 20.0});
    const std::vector<Index> seq = {0, 1, 2, 2, 2, 2, 2};
    const auto cert = bourbaki_cauchy_prefix(space, seq, 1.0, 5);
    REQUIRE(cert.has_value());
    CHECK(cert->m == 1);
    CHECK(cert->tail_start == 2);
    CHECK(cert->center == 2);
  }

  SUBCASE("min_tail bounds are enforced") {
    const auto space = line_space({0.0, 10.0});
    CHECK_THROWS_AS(bourbaki_cauchy_prefix(space, {0, 1}, 1.0, 3), DomainError);
    CHECK_THROWS_AS(bourbaki_cauchy_prefix(space, {0, 1}, 1.0, 0), DomainError);
  }

  SUBCASE("certificates match the exhaustive (m, t, c) scan") {
    std::mt19937_64 rng(229);
    for (int trial = 0; trial < 20; ++trial) {
      std::mt19937_64 point_rng(rng());
      const auto space = test_helpers::random_cloud(point_rng, 10, 2);
      const double eps = 0.15 + 0.05 * (trial % 8);
      std::vector<Index> seq(8);
      for (auto& p : seq) p = point_rng() % space.size();
      const auto fast = bourbaki_cauchy_prefix(space, seq, eps, 3);
      const auto brute = reference::prefix_certificate_brute(space, seq, eps, 3);
      REQUIRE(fast.has_value() == brute.has_value());
      if (fast) {
        CHECK(fast->m == brute->m);
        CHECK(fast->tail_start == brute->tail_start);
        CHECK(fast->center == brute->center);
      }
    }
  }
}

TEST_CASE("oscillation over chain balls") {
  SUBCASE("distance functions telescope") {
    const auto space = line_space({0.0, 0.4, 0.8, 1.2, 1.6});
    std::vector<double> f(space.size());
    for (Index y = 0; y < space.size(); ++y) f[y] = space.dist(2, y);
    for (std::size_t m = 1; m <= 3; ++m) {
      const auto result = oscillation_check(space, f, 1.0, 0.5, 2, m);
      CHECK(result.ok);
      CHECK(result.max_oscillation < static_cast<double>(m) * 0.5);
    }
  }

  SUBCASE("constant functions do not move") {
    const auto space = line_space({0, 1, 2});
    const std::vector<double> f(3, 7.0);
    const auto result = oscillation_check(space, f, 1.0, 1.5, 0, 2);
    CHECK(result.ok);
    CHECK(result.max_oscillation == 0.0);
  }

  SUBCASE("uncertified functions are rejected") {
    const auto space = line_space({0.0, 0.4, 0.8});
    std::vector<double> f = {0.0, 4.0, 8.0};  // slope 10, certificate says 1
    CHECK_THROWS_AS(oscillation_check(space, f, 1.0, 0.5, 0, 1), DomainError);
  }
}
