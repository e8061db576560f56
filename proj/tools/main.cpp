// Command-line surface: space generation, chain analysis, covering
// profiles, and the verification suites. Exit codes: 0 success, 1 domain or
// validation failure, 2 usage error.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chaincover/covers.hpp"
#include "chaincover/io.hpp"
#include "chaincover/verify.hpp"

namespace cc = chaincover;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_eps_grid(const std::string& text) {
  std::vector<double> grid;
  const auto parse_one = [](const std::string& tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad number '" + tok + "' in scale grid");
    }
  };
  if (text.find(':') != std::string::npos) {
    // A:B:STEP inclusive range
    std::vector<std::string> parts;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("scale range must be A:B:STEP");
    const double a = parse_one(parts[0]);
    const double b = parse_one(parts[1]);
    const double step = parse_one(parts[2]);
    if (step <= 0.0 || b < a) throw UsageError("scale range must ascend with positive step");
    for (double v = a; v <= b + 1e-12; v += step) grid.push_back(v);
    return grid;
  }
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) grid.push_back(parse_one(tok));
  return grid;
}

std::vector<cc::StepLimit> parse_m_grid(const std::string& text) {
  std::vector<cc::StepLimit> grid;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    if (tok == "inf") {
      grid.push_back(cc::StepLimit::infinity());
      continue;
    }
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      grid.push_back(cc::StepLimit::finite(static_cast<std::size_t>(v)));
    } catch (const std::exception&) {
      throw UsageError("bad depth '" + tok + "' in depth grid (positive integer or inf)");
    }
  }
  if (grid.empty()) throw UsageError("depth grid is empty");
  return grid;
}

cc::StepLimit parse_m(const std::string& text) {
  const auto grid = parse_m_grid(text);
  if (grid.size() != 1) throw UsageError("expected one depth value");
  return grid.front();
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_cover(const cc::CoverResult& cover) {
  std::cout << "method: " << cc::to_string(cover.method) << "\n";
  std::cout << "eps: " << format_value(cover.eps) << "\n";
  std::cout << "m: ";
  if (cover.m.is_infinite())
    std::cout << "inf";
  else
    std::cout << cover.m.value();
  std::cout << "\n";
  std::cout << "size: " << cover.size() << "\n";
  std::cout << "centers:";
  for (cc::Index c : cover.centers) std::cout << " " << c;
  std::cout << "\n";
  std::cout << "covered: " << cover.covered.size() << "/" << cover.covered.size() << "\n";
}

struct GenerateArgs {
  std::string family;
  std::string params;
  std::uint64_t seed = 0;
  std::string out;
  std::string factor_a, factor_b;
  bool no_cap_first = false;
};

cc::SpaceSpec build_spec(const GenerateArgs& args) {
  cc::SpaceSpec spec;
  try {
    spec.family = cc::family_from_name(args.family);
  } catch (const cc::Error& e) {
    throw UsageError(e.what());
  }
  if (spec.family == cc::Family::ProductSup) {
    if (args.factor_a.empty() || args.factor_b.empty())
      throw UsageError("product_sup needs --factor-a and --factor-b specs");
    spec.factor_a = std::make_shared<cc::SpaceSpec>(cc::parse_space_spec(args.factor_a));
    spec.factor_b = std::make_shared<cc::SpaceSpec>(cc::parse_space_spec(args.factor_b));
    spec.cap_first = !args.no_cap_first;
  } else if (!args.params.empty()) {
    spec = cc::parse_space_spec(args.family + ":" + args.params);
  }
  spec.seed = args.seed;
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"finite metric spaces: chain components, chain metrics, covering profiles"};
  app.require_subcommand(1);

  // generate
  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "emit a distance-matrix CSV for a built-in family");
  cmd_gen->add_option("--family", gen.family,
                      "discrete01 | sqrt_interval | reciprocal_set | atsuji_pairs | "
                      "orthonormal_rays | lattice | random_cloud | product_sup")
      ->required();
  cmd_gen->add_option("--params", gen.params, "comma-separated family parameters");
  cmd_gen->add_option("--seed", gen.seed, "seed for random_cloud");
  cmd_gen->add_option("--out", gen.out, "output CSV path")->required();
  cmd_gen->add_option("--factor-a", gen.factor_a, "first product factor, e.g. reciprocal_set:8");
  cmd_gen->add_option("--factor-b", gen.factor_b, "second product factor");
  cmd_gen->add_flag("--no-cap-first", gen.no_cap_first,
                    "do not clamp the first product factor's metric at 1");

  // components
  std::string in_path, subset_path;
  double eps = 0.0;
  auto* cmd_comp = app.add_subcommand("components", "count chainable components at a scale");
  cmd_comp->add_option("--input", in_path, "distance-matrix CSV")->required();
  cmd_comp->add_option("--eps", eps, "scale (strict threshold)")->required();

  // chain-dist
  std::size_t from = 0, to = 0;
  auto* cmd_dist = app.add_subcommand("chain-dist", "chain distance between two points");
  cmd_dist->add_option("--input", in_path, "distance-matrix CSV")->required();
  cmd_dist->add_option("--eps", eps, "scale")->required();
  cmd_dist->add_option("--from", from, "source point index")->required();
  cmd_dist->add_option("--to", to, "target point index")->required();

  // cover
  std::string m_text = "1";
  bool exact = false;
  std::size_t exact_limit = 14;
  auto* cmd_cover = app.add_subcommand("cover", "cover a subset with chain balls");
  cmd_cover->add_option("--input", in_path, "distance-matrix CSV")->required();
  cmd_cover->add_option("--subset", subset_path, "file with one point index per line (default: all)");
  cmd_cover->add_option("--eps", eps, "scale")->required();
  cmd_cover->add_option("--m", m_text, "depth: positive integer or inf")->required();
  cmd_cover->add_flag("--exact", exact, "minimum cover by exhaustive search");
  cmd_cover->add_option("--exact-limit", exact_limit,
                        "max distinct candidate patterns for --exact (default 14)");

  // rho
  std::string labels_path;
  auto* cmd_rho = app.add_subcommand("rho", "derived-metric distance between two points");
  cmd_rho->add_option("--input", in_path, "distance-matrix CSV")->required();
  cmd_rho->add_option("--eps", eps, "scale")->required();
  cmd_rho->add_option("--labels", labels_path,
                      "file with one positive integer per component (default: all 1)");
  cmd_rho->add_option("--from", from, "first point index")->required();
  cmd_rho->add_option("--to", to, "second point index")->required();

  // analyze
  std::vector<std::string> subset_paths;
  std::string eps_grid_text, m_grid_text = "1,2,4,inf", out_path;
  auto* cmd_analyze = app.add_subcommand("analyze", "covering profiles across a scale grid");
  cmd_analyze->add_option("--input", in_path, "distance-matrix CSV")->required();
  cmd_analyze->add_option("--subset", subset_paths, "subset file; repeatable (default: all points)");
  cmd_analyze->add_option("--eps-grid", eps_grid_text, "A:B:STEP range or comma list")->required();
  cmd_analyze->add_option("--m-grid", m_grid_text, "comma list of depths, inf allowed");
  cmd_analyze->add_option("--out", out_path, "report JSON path (default: stdout)");
  cmd_analyze->add_flag("--exact", exact, "exact covers instead of greedy");

  // verify
  std::string suite = "all";
  cc::verify::Options vopts;
  auto* cmd_verify = app.add_subcommand("verify", "run the property suites");
  cmd_verify->add_option("--suite", suite, "all | metric | rho | lemma | cover | oscillation");
  cmd_verify->add_option("--seed", vopts.seed, "instance stream seed (default 7)");
  cmd_verify->add_option("--instances", vopts.instances, "instances per property (default 100)");
  cmd_verify->add_option("--out", out_path, "also write the outcome as report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  if (cmd_gen->parsed()) {
    const auto spec = build_spec(gen);
    const auto space = cc::generate(spec);
    cc::save_distance_csv(space, gen.out);
    std::cout << "generated " << spec.describe() << ": " << space.size()
              << " points -> " << gen.out << "\n";
    return 0;
  }

  if (cmd_comp->parsed()) {
    const auto space = cc::load_distance_csv(in_path);
    const auto graph = cc::build_chain_graph(space, eps);
    std::cout << graph.component_count() << " components\n";
    std::cout << "sizes:";
    for (cc::Index c = 0; c < graph.component_count(); ++c)
      std::cout << " " << graph.component_members(c).size();
    std::cout << "\n";
    std::cout << "representatives:";
    for (cc::Index r : graph.representatives()) std::cout << " " << r;
    std::cout << "\n";
    return 0;
  }

  if (cmd_dist->parsed()) {
    const auto space = cc::load_distance_csv(in_path);
    const auto graph = cc::build_chain_graph(space, eps);
    const auto d = cc::chain_distance(graph, from, to);
    if (d)
      std::cout << format_value(*d) << "\n";
    else
      std::cout << "different-components\n";
    return 0;
  }

  if (cmd_cover->parsed()) {
    const auto space = cc::load_distance_csv(in_path);
    const auto B = subset_path.empty()
                       ? cc::full_subset(space)
                       : cc::make_subset(space, cc::load_subset_indices(subset_path));
    cc::CoverOptions opts;
    opts.method = exact ? cc::CoverMethod::Exact : cc::CoverMethod::Greedy;
    opts.exact_limit = exact_limit;
    const auto cover = cc::chain_cover(space, B, eps, parse_m(m_text), opts);
    print_cover(cover);
    return 0;
  }

  if (cmd_rho->parsed()) {
    const auto space = cc::load_distance_csv(in_path);
    const auto graph = cc::build_chain_graph(space, eps);
    std::vector<int> values;
    if (labels_path.empty()) {
      values.assign(graph.component_count(), 1);
    } else {
      for (cc::Index v : cc::load_subset_indices(labels_path))
        values.push_back(static_cast<int>(v));
    }
    const auto labeling = cc::build_labeling(graph, values);
    const auto rho = cc::build_rho(labeling);
    std::cout << format_value(rho.value(from, to)) << "\n";
    return 0;
  }

  if (cmd_analyze->parsed()) {
    const auto space = cc::load_distance_csv(in_path);
    std::vector<cc::SubsetHandle> subsets;
    if (subset_paths.empty()) {
      subsets.push_back(cc::full_subset(space));
    } else {
      for (const auto& p : subset_paths)
        subsets.push_back(cc::make_subset(space, cc::load_subset_indices(p)));
    }
    cc::CoverOptions opts;
    opts.method = exact ? cc::CoverMethod::Exact : cc::CoverMethod::Greedy;
    const auto report = cc::bornology_report(space, subsets, parse_eps_grid(eps_grid_text),
                                             parse_m_grid(m_grid_text), opts);
    const auto json = cc::report_to_json(report, cc::Json("external"));
    if (out_path.empty())
      std::cout << json.dump(2) << "\n";
    else
      cc::save_report_json(json, out_path);
    return 0;
  }

  if (cmd_verify->parsed()) {
    if (!cc::verify::is_suite_name(suite))
      throw UsageError("unknown suite '" + suite + "'");
    const auto results = cc::verify::run_suites(suite, vopts);
    std::size_t failed = 0;
    for (const auto& r : results) {
      std::printf("%-4s  %-78s %6zu instances %4zu failures\n",
                  r.ok() ? "PASS" : "FAIL", r.property.c_str(), r.instances,
                  r.failures);
      if (!r.ok() && !r.detail.empty()) std::printf("      first failure: %s\n", r.detail.c_str());
      if (!r.ok()) ++failed;
    }
    std::printf("suites: %zu passed, %zu failed\n", results.size() - failed, failed);
    if (!out_path.empty()) {
      std::vector<cc::VerificationRecord> records;
      for (const auto& r : results) records.push_back({r.property, r.instances, r.failures});
      cc::save_report_json(cc::verification_to_json(records, cc::Json("none")), out_path);
    }
    return failed == 0 ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const cc::MetricValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  } catch (const cc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
