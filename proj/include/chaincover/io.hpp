#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chaincover/covers.hpp"
#include "chaincover/spaces.hpp"

#include "json.hpp"

namespace chaincover {

using Json = nlohmann::ordered_json;

// Square numeric CSV, optionally preceded by one row of labels (detected by
// a non-numeric first token). The loaded table must validate as a metric.
FiniteMetricSpace load_distance_csv(const std::string& path, SpaceOptions opts = {});
FiniteMetricSpace load_distance_csv(std::istream& in, SpaceOptions opts = {});

// One point per row, rectangular numeric CSV.
FiniteMetricSpace load_points_csv(const std::string& path, PointMetric metric,
                                  SpaceOptions opts = {});
FiniteMetricSpace load_points_csv(std::istream& in, PointMetric metric,
                                  SpaceOptions opts = {});

void save_distance_csv(const FiniteMetricSpace& space, const std::string& path);
void save_distance_csv(const FiniteMetricSpace& space, std::ostream& out);

// One point index per line.
std::vector<Index> load_subset_indices(const std::string& path);

// Rounds to 12 significant digits; report numbers pass through this so a
// serialize -> parse -> serialize round trip is byte-identical.
double round_sig12(double v);

struct VerificationRecord {
  std::string property;
  std::size_t instances = 0;
  std::size_t failures = 0;
};

// Report JSON (schema_version 1). Top-level keys, in order: schema_version,
// space, eps_grid, m_grid, subsets, flags, and verification when nonempty.
Json report_to_json(const BornologyReport& report, const Json& space_desc);
Json profile_to_json(const ScaleProfile& profile, const Json& space_desc);
Json verification_to_json(const std::vector<VerificationRecord>& records,
                          const Json& space_desc);

Json spec_to_json(const SpaceSpec& spec);

void save_report_json(const Json& report, const std::string& path);

}  // namespace chaincover
