#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chaincover/rho_metric.hpp"

namespace chaincover {

enum class CoverMethod { Greedy, Exact, Certificate };

std::string to_string(CoverMethod method);

// A covering certificate: the chain balls of depth m around the centers
// jointly contain the covered subset. Centers are drawn from the whole
// space, not just from the covered set.
struct CoverResult {
  std::vector<Index> centers;
  StepLimit m = StepLimit::finite(1);
  double eps = 0.0;
  SubsetHandle covered;
  CoverMethod method = CoverMethod::Greedy;

  std::size_t size() const { return centers.size(); }
};

struct CoverOptions {
  CoverMethod method = CoverMethod::Greedy;
  // Exact search refuses to run with more than this many distinct candidate
  // coverage patterns.
  std::size_t exact_limit = 14;
  Exec exec = Exec::Parallel;
};

// Cover of B by open balls of radius eps (depth-1 chain balls). Greedy picks
// the center covering the most uncovered points, ties broken by smallest
// index; exact finds a minimum cover.
CoverResult net_cover(const FiniteMetricSpace& space, const SubsetHandle& B, double eps,
                      const CoverOptions& opts = {});

// Cover of B by chain balls of depth m at scale eps. Depth infinity selects
// one center (the representative) per component met by B.
CoverResult chain_cover(const FiniteMetricSpace& space, const SubsetHandle& B,
                        double eps, StepLimit m, const CoverOptions& opts = {});
CoverResult chain_cover(const ChainGraph& graph, const SubsetHandle& B, StepLimit m,
                        const CoverOptions& opts = {});

// Number of distinct components meeting B. This equals the largest image
// size on B over all labelings, attained by adversarial_labeling.
std::size_t components_met(const ChainGraph& graph, const SubsetHandle& B);

// Verifies that every point of the union of depth-M chain balls around the
// representatives of the components F sits within M*eps + 2*max_label(F) of
// the representative of j in the derived metric.
struct ForwardBoundResult {
  double bound = 0.0;
  double max_label = 0.0;  // max labeling value over F
  std::size_t checked = 0;
  struct Violation {
    Index x;
    double rho;
  };
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

ForwardBoundResult rho_bounded_forward_bound(const RhoMetric& rho,
                                             const std::vector<Index>& F, std::size_t M,
                                             Index j);

// From a bound R on the derived-metric distance to the representative of the
// first point's component, produces components F, depth M and a verified
// chain-ball cover of B. Throws DomainError (naming the point) if some x in
// B has rho(x, rep) >= R.
struct ReverseCover {
  std::vector<Index> components;  // components met by B
  std::size_t M = 0;
  double max_label = 0.0;
  CoverResult cover;              // centers = representatives of `components`
  std::vector<Index> uncovered;   // must be empty
};

ReverseCover rho_bounded_reverse_cover(const RhoMetric& rho, const SubsetHandle& B,
                                       double R);

// Greedy cover sizes across an (eps, m) grid, plus the component count met
// at every scale. Cover sizes are expected to shrink as m grows; greedy
// exceptions are recorded, not corrected.
struct ProfileEntry {
  StepLimit m;
  std::size_t size = 0;
  CoverMethod method = CoverMethod::Greedy;
};

struct ProfileRow {
  double eps = 0.0;
  std::vector<ProfileEntry> entries;
  std::size_t components_met = 0;
};

struct ProfileAnomaly {
  double eps = 0.0;
  StepLimit m_small = StepLimit::finite(1);
  StepLimit m_large = StepLimit::finite(1);
  std::size_t size_small = 0;
  std::size_t size_large = 0;
};

struct ScaleProfile {
  SubsetHandle subset;
  std::vector<ProfileRow> rows;
  std::vector<ProfileAnomaly> anomalies;
};

ScaleProfile scale_profile(const FiniteMetricSpace& space, const SubsetHandle& B,
                           const std::vector<double>& eps_grid,
                           const std::vector<StepLimit>& m_grid,
                           const CoverOptions& opts = {});

// Per-subset profiles with net-versus-chain divergence flags: a grid cell
// where a depth-m cover needs strictly fewer centers than the net cover
// witnesses that ball covers and chain covers disagree at that scale.
struct DivergenceFlag {
  std::size_t subset_index = 0;
  double eps = 0.0;
  StepLimit m = StepLimit::finite(1);
  std::size_t net_size = 0;
  std::size_t chain_size = 0;
};

struct SubsetReport {
  SubsetHandle subset;
  double diameter = 0.0;
  ScaleProfile profile;
  std::string classification;
};

struct BornologyReport {
  std::vector<double> eps_grid;
  std::vector<StepLimit> m_grid;
  std::vector<SubsetReport> subsets;
  std::vector<DivergenceFlag> flags;
};

BornologyReport bornology_report(const FiniteMetricSpace& space,
                                 const std::vector<SubsetHandle>& subsets,
                                 const std::vector<double>& eps_grid,
                                 const std::vector<StepLimit>& m_grid,
                                 const CoverOptions& opts = {});

// Smallest depth m (then earliest tail start, then smallest center) such
// that every sequence element from the tail start on lies in the depth-m
// chain ball around the center, with tail length at least min_tail. Returns
// nullopt when every admissible tail meets more than one component.
struct PrefixCertificate {
  std::size_t m = 0;
  std::size_t tail_start = 0;
  Index center = 0;
};

std::optional<PrefixCertificate> bourbaki_cauchy_prefix(const FiniteMetricSpace& space,
                                                        const std::vector<Index>& seq,
                                                        double eps,
                                                        std::size_t min_tail = 5);

// Max |f(y) - f(x)| over the depth-m chain ball around x. When f has an
// empty slope certificate at (K, eps), the oscillation is bounded by
// K * m * eps: each of the at most m steps moves f by less than K * eps.
struct OscillationResult {
  double max_oscillation = 0.0;
  double bound = 0.0;
  bool ok = false;
};

OscillationResult oscillation_check(const FiniteMetricSpace& space,
                                    const std::vector<double>& f, double K, double eps,
                                    Index x, std::size_t m);

}  // namespace chaincover
