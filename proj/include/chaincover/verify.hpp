#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chaincover/covers.hpp"
#include "chaincover/spaces.hpp"

// Property suites checking the library against brute-force references and
// the structural guarantees of the chain-metric construction. The CLI
// `verify` subcommand and the acceptance harness both run these.
namespace chaincover::verify {

struct SuiteResult {
  std::string property;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure context, empty when clean

  bool ok() const { return failures == 0; }
};

struct Options {
  std::uint64_t seed = 7;
  std::size_t instances = 100;
  Exec exec = Exec::Parallel;
};

// One deterministic random test instance: a point-cloud space, a scale
// drawn from its distance range, and a labeling with small values. Instance
// k of a given seed is identical no matter which suite regenerates it.
struct Instance {
  FiniteMetricSpace space;
  double eps = 0.0;
  std::vector<int> labeling_values;  // one per component at eps, in [1, 5]
};

Instance make_instance(std::uint64_t seed, std::size_t k, std::size_t max_n);

// Auxiliary randomness for suite-specific draws, independent of the
// instance stream so every suite sees the same instances.
std::mt19937_64 aux_rng(std::uint64_t seed, std::size_t k);

SubsetHandle random_subset(std::mt19937_64& rng, const FiniteMetricSpace& space);

// --- individual properties ---------------------------------------------

// Derived metric satisfies all metric axioms on every triple.
SuiteResult rho_triangle_axioms(const Options& opts, std::size_t max_n = 60,
                                double tol = 1e-9);
// Both directions of local identity between the base and derived metric.
SuiteResult rho_local_identity(const Options& opts, std::size_t max_n = 60);
// Two representative choices are both locally identical to the base metric.
SuiteResult rho_rep_invariance(const Options& opts, std::size_t max_n = 60);
// Shortest-path chain distance equals exhaustive simple-path minimum and
// the relaxation route.
SuiteResult chain_distance_oracle(const Options& opts, std::size_t max_n = 9,
                                  double tol = 1e-12);
// Chain balls and hop counts match the set-expansion reference.
SuiteResult chain_ball_oracle(const Options& opts, std::size_t max_n = 12);
// hop(x,y) <= 2 * chain_distance(x,y) / eps + 1 on connected pairs.
SuiteResult hop_bound(const Options& opts, std::size_t max_n = 60);
// Generators validate, generation is deterministic, and the validator
// pinpoints seeded violations.
SuiteResult metric_generators_validate(const Options& opts);
// Everything in the union of depth-M balls around representatives of F
// stays within M*eps + 2*maxlabel of the representative of j in rho.
SuiteResult lemma_forward(const Options& opts, std::size_t max_n = 60);
// The (F, M) certificate produced from a rho-ball bound always covers.
SuiteResult lemma_reverse(const Options& opts, std::size_t max_n = 60);
// Image size of any labeling on B is at most the components met, with
// equality for the adversarial labeling.
SuiteResult labeling_image_bound(const Options& opts, std::size_t max_n = 60);
// Exact cover sizes are monotone in depth and end at the component count;
// greedy is within the (1 + ln|B|) factor; exact equals brute force.
SuiteResult cover_size_chain(const Options& opts, std::size_t max_n = 14);
// Orthonormal-rays contrast: tips need 8 net centers but a single depth-3
// chain center at eps = 0.8.
SuiteResult rays_example();
// Greedy net size of the reciprocal grid is stable as the tail refines.
SuiteResult reciprocal_net_stability();
// Oscillation of rho(., x0) over depth-m balls is bounded by m * eps.
SuiteResult oscillation_bound(const Options& opts, std::size_t max_n = 60);
// On the sqrt-interval grid the ball-inclusion map sends r to r^2.
SuiteResult sqrt_ball_inclusion();

// --- grouped runs -------------------------------------------------------

// Suites: metric, rho, lemma, cover, oscillation. "all" runs everything.
std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);
std::vector<SuiteResult> run_suites(const std::string& which, const Options& opts);

}  // namespace chaincover::verify
