#include "chaincover/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace chaincover {

namespace {

void check_table_shape(std::size_t n, const std::vector<double>& table) {
  if (n == 0) throw DomainError("metric space needs at least one point");
  if (table.size() != n * n)
    throw StructuralError("distance table is not square: expected " +
                          std::to_string(n * n) + " entries, got " +
                          std::to_string(table.size()));
  for (double v : table)
    if (!std::isfinite(v)) throw StructuralError("distance table has a non-finite entry");
}

double coord_dist(const std::vector<double>& a, const std::vector<double>& b,
                  PointMetric metric) {
  double acc = 0.0;
  switch (metric) {
    case PointMetric::Euclidean:
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
      }
      return std::sqrt(acc);
    case PointMetric::L1:
      for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
      return acc;
    case PointMetric::Linf:
      for (std::size_t k = 0; k < a.size(); ++k)
        acc = std::max(acc, std::abs(a[k] - b[k]));
      return acc;
  }
  return acc;
}

// Triangle scan kernel: rows are independent, so the parallel path splits on
// the outer index and output order stays identical to the serial path.
std::vector<MetricValidationReport::TriangleViolation> scan_triangles(
    std::size_t n, const std::vector<double>& t, double tau, Exec exec) {
  std::vector<std::vector<MetricValidationReport::TriangleViolation>> per_row(n);
  const auto row = [&](std::size_t i) {
    auto& out = per_row[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = t[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double excess = dij - t[i * n + k] - t[k * n + j] - tau;
        if (excess > 0.0)
          out.push_back({i, j, k, dij - t[i * n + k] - t[k * n + j]});
      }
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) row(i);
  }
  std::vector<MetricValidationReport::TriangleViolation> merged;
  for (auto& r : per_row)
    merged.insert(merged.end(), r.begin(), r.end());
  return merged;
}

}  // namespace

std::string MetricValidationReport::describe() const {
  std::ostringstream os;
  const std::size_t cap = 5;
  auto note_more = [&](std::size_t total) {
    if (total > cap) os << "  ... and " << (total - cap) << " more\n";
  };
  if (!diagonal_violations.empty()) {
    os << "nonzero diagonal (" << diagonal_violations.size() << "):\n";
    for (std::size_t k = 0; k < std::min(cap, diagonal_violations.size()); ++k)
      os << "  d(" << diagonal_violations[k].i << "," << diagonal_violations[k].i
         << ") = " << diagonal_violations[k].value << "\n";
    note_more(diagonal_violations.size());
  }
  if (!symmetry_violations.empty()) {
    os << "asymmetry (" << symmetry_violations.size() << "):\n";
    for (std::size_t k = 0; k < std::min(cap, symmetry_violations.size()); ++k) {
      const auto& v = symmetry_violations[k];
      os << "  d(" << v.i << "," << v.j << ") = " << v.dij << " but d(" << v.j
         << "," << v.i << ") = " << v.dji << "\n";
    }
    note_more(symmetry_violations.size());
  }
  if (!positivity_violations.empty()) {
    os << "zero distance between distinct points (" << positivity_violations.size()
       << "):\n";
    for (std::size_t k = 0; k < std::min(cap, positivity_violations.size()); ++k)
      os << "  d(" << positivity_violations[k].i << ","
         << positivity_violations[k].j << ") <= tau\n";
    note_more(positivity_violations.size());
  }
  if (!triangle_violations.empty()) {
    os << "triangle inequality failures (" << triangle_violations.size() << "):\n";
    for (std::size_t k = 0; k < std::min(cap, triangle_violations.size()); ++k) {
      const auto& v = triangle_violations[k];
      os << "  d(" << v.i << "," << v.j << ") > d(" << v.i << "," << v.k
         << ") + d(" << v.k << "," << v.j << ") by " << v.excess << "\n";
    }
    note_more(triangle_violations.size());
  }
  return os.str();
}

MetricValidationReport validate_metric(std::size_t n, const std::vector<double>& table,
                                       double tau, Exec exec) {
  check_table_shape(n, table);
  MetricValidationReport report;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = table[i * n + i];
    if (std::abs(d) > tau) report.diagonal_violations.push_back({i, d});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = table[i * n + j];
      const double dji = table[j * n + i];
      if (std::abs(dij - dji) > tau)
        report.symmetry_violations.push_back({i, j, dij, dji});
      if (dij <= tau) report.positivity_violations.push_back({i, j});
    }
  report.triangle_violations = scan_triangles(n, table, tau, exec);
  return report;
}

FiniteMetricSpace FiniteMetricSpace::from_table(std::size_t n, std::vector<double> table,
                                                SpaceOptions opts, Exec exec) {
  return from_table(n, std::move(table), {}, opts, exec);
}

FiniteMetricSpace FiniteMetricSpace::from_table(std::size_t n, std::vector<double> table,
                                                std::vector<std::string> labels,
                                                SpaceOptions opts, Exec exec) {
  auto report = validate_metric(n, table, opts.tau, exec);
  if (!report.empty()) throw MetricValidationError(std::move(report));
  if (!labels.empty() && labels.size() != n)
    throw StructuralError("label count does not match point count");
  FiniteMetricSpace s;
  s.n_ = n;
  s.dense_ = true;
  s.table_ = std::move(table);
  s.labels_ = std::move(labels);
  s.opts_ = opts;
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<std::vector<double>> coords,
                                                 PointMetric metric, SpaceOptions opts,
                                                 Exec exec) {
  const std::size_t n = coords.size();
  if (n == 0) throw DomainError("metric space needs at least one point");
  const std::size_t dim = coords[0].size();
  if (dim == 0) throw StructuralError("points need at least one coordinate");
  for (const auto& p : coords) {
    if (p.size() != dim) throw StructuralError("ragged point rows");
    for (double v : p)
      if (!std::isfinite(v)) throw StructuralError("non-finite coordinate");
  }

  FiniteMetricSpace s;
  s.n_ = n;
  s.coords_ = std::move(coords);
  s.metric_ = metric;
  s.opts_ = opts;

  // Duplicate points would make a pseudometric; reject them up front. The
  // remaining axioms hold by construction for coordinate metrics.
  std::vector<std::pair<Index, Index>> dup;
  if (n <= opts.dense_limit) {
    s.dense_ = true;
    s.table_.assign(n * n, 0.0);
    const auto fill_row = [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j)
        s.table_[i * n + j] = coord_dist(s.coords_[i], s.coords_[j], metric);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        fill_row(static_cast<std::size_t>(i));
    } else {
      for (std::size_t i = 0; i < n; ++i) fill_row(i);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (s.table_[i * n + j] <= opts.tau) dup.push_back({i, j});
  } else {
    s.dense_ = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (s.point_dist(i, j) <= opts.tau) dup.push_back({i, j});
  }
  if (!dup.empty()) {
    MetricValidationReport report;
    for (auto [i, j] : dup) report.positivity_violations.push_back({i, j});
    throw MetricValidationError(std::move(report));
  }
  return s;
}

double FiniteMetricSpace::point_dist(Index i, Index j) const {
  return coord_dist(coords_[i], coords_[j], metric_);
}

double FiniteMetricSpace::min_positive_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) best = std::min(best, dist(i, j));
  return best;
}

double FiniteMetricSpace::max_distance() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) best = std::max(best, dist(i, j));
  return best;
}

bool SubsetHandle::contains(Index x) const {
  return std::binary_search(indices.begin(), indices.end(), x);
}

SubsetHandle make_subset(const FiniteMetricSpace& space, std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= space.size())
      throw DomainError("subset index " + std::to_string(indices[k]) +
                        " out of range for space of size " +
                        std::to_string(space.size()));
    if (k > 0 && indices[k] == indices[k - 1])
      throw DomainError("duplicate subset index " + std::to_string(indices[k]));
  }
  return SubsetHandle{std::move(indices), space.size()};
}

SubsetHandle full_subset(const FiniteMetricSpace& space) {
  std::vector<Index> idx(space.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return SubsetHandle{std::move(idx), space.size()};
}

SubsetHandle singleton_subset(const FiniteMetricSpace& space, Index x) {
  return make_subset(space, {x});
}

namespace {

void check_subset(const FiniteMetricSpace& space, const SubsetHandle& B,
                  const char* what) {
  if (B.space_size != space.size())
    throw StructuralError(std::string(what) + ": subset belongs to a space of size " +
                          std::to_string(B.space_size) + ", not " +
                          std::to_string(space.size()));
  if (B.empty()) throw DomainError(std::string(what) + ": subset is empty");
  if (!B.indices.empty() && B.indices.back() >= space.size())
    throw DomainError(std::string(what) + ": subset index out of range");
}

void check_point(const FiniteMetricSpace& space, Index x) {
  if (x >= space.size())
    throw DomainError("point index " + std::to_string(x) +
                      " out of range for space of size " + std::to_string(space.size()));
}

}  // namespace

double dist_to_set(const FiniteMetricSpace& space, Index x, const SubsetHandle& A) {
  check_subset(space, A, "dist_to_set");
  check_point(space, x);
  double best = std::numeric_limits<double>::infinity();
  for (Index a : A.indices) best = std::min(best, space.dist(x, a));
  return best;
}

SubsetHandle closed_ball(const FiniteMetricSpace& space, Index x, double r) {
  check_point(space, x);
  if (r < 0.0) throw DomainError("closed_ball: negative radius");
  std::vector<Index> members;
  for (Index y = 0; y < space.size(); ++y)
    if (space.dist(x, y) <= r) members.push_back(y);
  return SubsetHandle{std::move(members), space.size()};
}

double diameter(const FiniteMetricSpace& space, const SubsetHandle& B) {
  check_subset(space, B, "diameter");
  double best = 0.0;
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = a + 1; b < B.size(); ++b)
      best = std::max(best, space.dist(B.indices[a], B.indices[b]));
  return best;
}

std::vector<std::pair<double, double>> ball_inclusion_map(
    const FiniteMetricSpace& space_d, const FiniteMetricSpace& space_rho,
    Index x0, const std::vector<double>& radii) {
  if (space_d.size() != space_rho.size())
    throw StructuralError("ball_inclusion_map: the two metrics live on carriers of size " +
                          std::to_string(space_d.size()) + " and " +
                          std::to_string(space_rho.size()));
  check_point(space_d, x0);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] < 0.0) throw DomainError("ball_inclusion_map: negative radius");
    if (k > 0 && radii[k] <= radii[k - 1])
      throw DomainError("ball_inclusion_map: radii must be strictly increasing");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (double r : radii) {
    double R = 0.0;
    for (Index y = 0; y < space_d.size(); ++y)
      if (space_rho.dist(x0, y) <= r) R = std::max(R, space_d.dist(x0, y));
    out.emplace_back(r, R);
  }
  return out;
}

}  // namespace chaincover
