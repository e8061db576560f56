#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaincover/errors.hpp"
#include "chaincover/exec.hpp"

namespace chaincover {

using Index = std::size_t;

enum class PointMetric { Euclidean, L1, Linf };

struct SpaceOptions {
  // Absolute tolerance for all metric-axiom and equality checks.
  double tau = 1e-9;
  // Point-cloud-backed spaces above this size skip the dense table and
  // compute distances from coordinates on demand.
  std::size_t dense_limit = 2048;
};

// Every metric-axiom violation found in a raw distance table. An empty
// report certifies a metric at the given tolerance.
struct MetricValidationReport {
  struct SymmetryViolation {
    Index i, j;
    double dij, dji;
  };
  struct TriangleViolation {
    Index i, j, k;  // d(i,j) > d(i,k) + d(k,j) + tau
    double excess;
  };
  struct DiagonalViolation {
    Index i;
    double value;
  };
  struct PositivityViolation {
    Index i, j;
  };

  std::vector<SymmetryViolation> symmetry_violations;
  std::vector<TriangleViolation> triangle_violations;
  std::vector<DiagonalViolation> diagonal_violations;
  std::vector<PositivityViolation> positivity_violations;

  bool empty() const {
    return symmetry_violations.empty() && triangle_violations.empty() &&
           diagonal_violations.empty() && positivity_violations.empty();
  }
  std::size_t total() const {
    return symmetry_violations.size() + triangle_violations.size() +
           diagonal_violations.size() + positivity_violations.size();
  }
  // Human-readable summary, truncated to a few lines per category.
  std::string describe() const;
};

// Thrown when a space is constructed from a table that fails validation.
class MetricValidationError : public Error {
 public:
  explicit MetricValidationError(MetricValidationReport report)
      : Error("distance table fails metric validation:\n" + report.describe()),
        report_(std::move(report)) {}

  const MetricValidationReport& report() const { return report_; }

 private:
  MetricValidationReport report_;
};

// N points with a validated symmetric distance table. Immutable after
// construction; all queries are safe to run concurrently.
class FiniteMetricSpace {
 public:
  // Validates the table (throws MetricValidationError on any violation).
  static FiniteMetricSpace from_table(std::size_t n, std::vector<double> table,
                                      SpaceOptions opts = {},
                                      Exec exec = Exec::Parallel);
  static FiniteMetricSpace from_table(std::size_t n, std::vector<double> table,
                                      std::vector<std::string> labels,
                                      SpaceOptions opts = {},
                                      Exec exec = Exec::Parallel);
  // Distances computed from coordinates; above opts.dense_limit points the
  // table is not materialized and dist() works from the coordinates.
  static FiniteMetricSpace from_points(std::vector<std::vector<double>> coords,
                                       PointMetric metric = PointMetric::Euclidean,
                                       SpaceOptions opts = {},
                                       Exec exec = Exec::Parallel);

  std::size_t size() const { return n_; }
  double tau() const { return opts_.tau; }
  const SpaceOptions& options() const { return opts_; }

  double dist(Index i, Index j) const {
    if (dense_) return table_[i * n_ + j];
    return point_dist(i, j);
  }

  bool has_coords() const { return !coords_.empty(); }
  const std::vector<std::vector<double>>& coords() const { return coords_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  double min_positive_distance() const;
  double max_distance() const;

 private:
  FiniteMetricSpace() = default;
  double point_dist(Index i, Index j) const;

  std::size_t n_ = 0;
  bool dense_ = true;
  std::vector<double> table_;  // row-major n*n when dense_
  std::vector<std::vector<double>> coords_;
  PointMetric metric_ = PointMetric::Euclidean;
  std::vector<std::string> labels_;
  SpaceOptions opts_;
};

// Strictly increasing point indices into a space of a recorded size.
struct SubsetHandle {
  std::vector<Index> indices;
  std::size_t space_size = 0;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  bool contains(Index x) const;
};

SubsetHandle make_subset(const FiniteMetricSpace& space, std::vector<Index> indices);
SubsetHandle full_subset(const FiniteMetricSpace& space);
SubsetHandle singleton_subset(const FiniteMetricSpace& space, Index x);

// Checks the metric axioms on a raw table at absolute tolerance tau.
// Violations are listed in ascending index order regardless of exec policy.
// Throws StructuralError if the table is not n*n or has non-finite entries.
MetricValidationReport validate_metric(std::size_t n, const std::vector<double>& table,
                                       double tau, Exec exec = Exec::Parallel);

// min over a in A of dist(x, a). A must be nonempty.
double dist_to_set(const FiniteMetricSpace& space, Index x, const SubsetHandle& A);

// { y : dist(x, y) <= r }, always containing x. r must be >= 0.
SubsetHandle closed_ball(const FiniteMetricSpace& space, Index x, double r);

// max pairwise distance over B; 0 for singletons. B must be nonempty.
double diameter(const FiniteMetricSpace& space, const SubsetHandle& B);

// For each radius r (ascending), the smallest R such that the closed
// rho-ball around x0 of radius r is contained in the closed d-ball of
// radius R, i.e. R = max d(x0, y) over { y : rho(x0, y) <= r }.
std::vector<std::pair<double, double>> ball_inclusion_map(
    const FiniteMetricSpace& space_d, const FiniteMetricSpace& space_rho,
    Index x0, const std::vector<double>& radii);

}  // namespace chaincover
