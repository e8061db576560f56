#include "chaincover/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chaincover {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(line);
  while (std::getline(in, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& tok, double& out) {
  try {
    std::size_t used = 0;
    std::string trimmed = tok;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.pop_back();
    std::size_t start = 0;
    while (start < trimmed.size() && trimmed[start] == ' ') ++start;
    trimmed = trimmed.substr(start);
    if (trimmed.empty()) return false;
    out = std::stod(trimmed, &used);
    return used == trimmed.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

FiniteMetricSpace load_distance_csv(const std::string& path, SpaceOptions opts) {
  auto in = open_input(path);
  try {
    return load_distance_csv(in, opts);
  } catch (const ParseError& e) {
    throw ParseError(std::string("in '") + path + "': " + e.what(), e.line(), e.column());
  }
}

FiniteMetricSpace load_distance_csv(std::istream& in, SpaceOptions opts) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError("empty distance CSV", 1, 1);

  std::size_t first_data = 0;
  std::vector<std::string> labels;
  {
    const auto toks = split_csv_line(lines[0]);
    double probe;
    if (!toks.empty() && !parse_double(toks[0], probe)) {
      labels = toks;
      first_data = 1;
    }
  }
  if (first_data >= lines.size()) throw ParseError("label row without data", 2, 1);

  const std::size_t n = split_csv_line(lines[first_data]).size();
  if (!labels.empty() && labels.size() != n)
    throw ParseError("label row has " + std::to_string(labels.size()) +
                         " entries for " + std::to_string(n) + " columns",
                     1, 1);
  if (lines.size() - first_data != n)
    throw ParseError("expected " + std::to_string(n) + " data rows, found " +
                         std::to_string(lines.size() - first_data),
                     first_data + 1, 1);

  std::vector<double> table(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto toks = split_csv_line(lines[first_data + r]);
    if (toks.size() != n)
      throw ParseError("row has " + std::to_string(toks.size()) + " entries, expected " +
                           std::to_string(n),
                       first_data + r + 1, 1);
    for (std::size_t c = 0; c < n; ++c) {
      double v;
      if (!parse_double(toks[c], v))
        throw ParseError("bad number '" + toks[c] + "'", first_data + r + 1, c + 1);
      table[r * n + c] = v;
    }
  }
  return FiniteMetricSpace::from_table(n, std::move(table), std::move(labels), opts);
}

FiniteMetricSpace load_points_csv(const std::string& path, PointMetric metric,
                                  SpaceOptions opts) {
  auto in = open_input(path);
  try {
    return load_points_csv(in, metric, opts);
  } catch (const ParseError& e) {
    throw ParseError(std::string("in '") + path + "': " + e.what(), e.line(), e.column());
  }
}

FiniteMetricSpace load_points_csv(std::istream& in, PointMetric metric,
                                  SpaceOptions opts) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError("empty points CSV", 1, 1);
  std::vector<std::vector<double>> coords;
  std::size_t dim = 0;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto toks = split_csv_line(lines[r]);
    if (r == 0) dim = toks.size();
    if (toks.size() != dim)
      throw ParseError("ragged row: " + std::to_string(toks.size()) +
                           " coordinates, expected " + std::to_string(dim),
                       r + 1, 1);
    std::vector<double> p(dim);
    for (std::size_t c = 0; c < dim; ++c)
      if (!parse_double(toks[c], p[c]))
        throw ParseError("bad number '" + toks[c] + "'", r + 1, c + 1);
    coords.push_back(std::move(p));
  }
  return FiniteMetricSpace::from_points(std::move(coords), metric, opts);
}

void save_distance_csv(const FiniteMetricSpace& space, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  save_distance_csv(space, out);
  if (!out) throw Error("write to '" + path + "' failed");
}

void save_distance_csv(const FiniteMetricSpace& space, std::ostream& out) {
  const std::size_t n = space.size();
  if (space.has_labels()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out << ",";
      out << space.labels()[i];
    }
    out << "\n";
  }
  char buf[40];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ",";
      std::snprintf(buf, sizeof buf, "%.17g", space.dist(i, j));
      out << buf;
    }
    out << "\n";
  }
}

std::vector<Index> load_subset_indices(const std::string& path) {
  auto in = open_input(path);
  std::vector<Index> indices;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(line, &used);
      if (used != line.size() || v < 0) throw std::invalid_argument(line);
      indices.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw ParseError("bad point index '" + line + "' in '" + path + "'", lineno, 1);
    }
  }
  return indices;
}

double round_sig12(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

namespace {

Json step_to_json(const StepLimit& m) {
  if (m.is_infinite()) return Json("inf");
  return Json(m.value());
}

Json subset_report_to_json(const SubsetReport& sr) {
  Json j;
  j["indices"] = sr.subset.indices;
  j["diameter"] = round_sig12(sr.diameter);
  Json profile = Json::array();
  for (const ProfileRow& row : sr.profile.rows) {
    Json jr;
    jr["eps"] = round_sig12(row.eps);
    Json entries = Json::array();
    for (const ProfileEntry& e : row.entries) {
      Json je;
      je["m"] = step_to_json(e.m);
      je["size"] = e.size;
      je["method"] = to_string(e.method);
      entries.push_back(std::move(je));
    }
    jr["entries"] = std::move(entries);
    jr["components_met"] = row.components_met;
    profile.push_back(std::move(jr));
  }
  j["profile"] = std::move(profile);
  j["classification"] = sr.classification;
  return j;
}

Json skeleton(const Json& space_desc) {
  Json j;
  j["schema_version"] = 1;
  j["space"] = space_desc;
  j["eps_grid"] = Json::array();
  j["m_grid"] = Json::array();
  j["subsets"] = Json::array();
  j["flags"] = Json::array();
  return j;
}

}  // namespace

Json spec_to_json(const SpaceSpec& spec) {
  Json j;
  j["family"] = family_name(spec.family);
  Json params = Json::array();
  for (double p : spec.params) params.push_back(round_sig12(p));
  j["params"] = std::move(params);
  if (spec.family == Family::RandomCloud) j["seed"] = spec.seed;
  if (spec.family == Family::ProductSup) {
    if (spec.factor_a) j["factor_a"] = spec_to_json(*spec.factor_a);
    if (spec.factor_b) j["factor_b"] = spec_to_json(*spec.factor_b);
    j["cap_first"] = spec.cap_first;
  }
  return j;
}

Json report_to_json(const BornologyReport& report, const Json& space_desc) {
  Json j = skeleton(space_desc);
  for (double e : report.eps_grid) j["eps_grid"].push_back(round_sig12(e));
  for (const StepLimit& m : report.m_grid) j["m_grid"].push_back(step_to_json(m));
  for (const SubsetReport& sr : report.subsets)
    j["subsets"].push_back(subset_report_to_json(sr));
  for (const DivergenceFlag& f : report.flags) {
    Json jf;
    jf["type"] = "net_chain_divergence";
    jf["subset"] = f.subset_index;
    jf["eps"] = round_sig12(f.eps);
    jf["m"] = step_to_json(f.m);
    jf["net_size"] = f.net_size;
    jf["chain_size"] = f.chain_size;
    j["flags"].push_back(std::move(jf));
  }
  for (std::size_t s = 0; s < report.subsets.size(); ++s)
    for (const ProfileAnomaly& a : report.subsets[s].profile.anomalies) {
      Json jf;
      jf["type"] = "greedy_anomaly";
      jf["subset"] = s;
      jf["eps"] = round_sig12(a.eps);
      jf["m_small"] = step_to_json(a.m_small);
      jf["m_large"] = step_to_json(a.m_large);
      jf["size_small"] = a.size_small;
      jf["size_large"] = a.size_large;
      j["flags"].push_back(std::move(jf));
    }
  return j;
}

Json profile_to_json(const ScaleProfile& profile, const Json& space_desc) {
  BornologyReport report;
  for (const ProfileRow& row : profile.rows) report.eps_grid.push_back(row.eps);
  if (!profile.rows.empty())
    for (const ProfileEntry& e : profile.rows.front().entries)
      report.m_grid.push_back(e.m);
  SubsetReport sr;
  sr.subset = profile.subset;
  sr.diameter = 0.0;  // unknown without the space; caller-level reports fill it
  sr.profile = profile;
  sr.classification = "";
  report.subsets.push_back(std::move(sr));
  return report_to_json(report, space_desc);
}

Json verification_to_json(const std::vector<VerificationRecord>& records,
                          const Json& space_desc) {
  Json j = skeleton(space_desc);
  Json v = Json::array();
  for (const auto& r : records) {
    Json jr;
    jr["property"] = r.property;
    jr["instances"] = r.instances;
    jr["failures"] = r.failures;
    v.push_back(std::move(jr));
  }
  j["verification"] = std::move(v);
  return j;
}

void save_report_json(const Json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << report.dump(2) << "\n";
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace chaincover
