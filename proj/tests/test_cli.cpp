// End-to-end checks of the command-line tool: spawns the real binary.

#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CHAINCOVER_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) result.output += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path temp_dir() {
  const auto dir = fs::temp_directory_path() / "chaincover_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("components subcommand counts the discrete metric") {
  const auto dir = temp_dir();
  const auto csv = dir / "disc4.csv";
  write_file(csv, "0,1,1,1\n1,0,1,1\n1,1,0,1\n1,1,1,0\n");
  const auto r = run_cli("components --input " + csv.string() + " --eps 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("4 components") == 0);
}

TEST_CASE("chain-dist prints the forced chain value") {
  const auto dir = temp_dir();
  const auto csv = dir / "line3.csv";
  write_file(csv, "0,0.5,1\n0.5,0,0.5\n1,0.5,0\n");
  const auto r = run_cli("chain-dist --input " + csv.string() +
                         " --eps 0.6 --from 0 --to 2");
  CHECK(r.exit_code == 0);
  CHECK(std::stod(r.output) == doctest::Approx(1.0));

  const auto split = run_cli("chain-dist --input " + csv.string() +
                             " --eps 0.4 --from 0 --to 2");
  CHECK(split.exit_code == 0);
  CHECK(split.output.find("different-components") != std::string::npos);
}

TEST_CASE("cover subcommand reports the certificate") {
  const auto dir = temp_dir();
  const auto csv = dir / "line5.csv";
  write_file(csv,
             "0,1,2,3,4\n1,0,1,2,3\n2,1,0,1,2\n3,2,1,0,1\n4,3,2,1,0\n");
  const auto r = run_cli("cover --input " + csv.string() + " --eps 1.1 --m 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("size: 1") != std::string::npos);
  CHECK(r.output.find("centers: 2") != std::string::npos);

  const auto exact = run_cli("cover --input " + csv.string() + " --eps 1.1 --m 1 --exact");
  CHECK(exact.exit_code == 0);
  CHECK(exact.output.find("size: 2") != std::string::npos);
  CHECK(exact.output.find("method: exact") != std::string::npos);
}

TEST_CASE("rho subcommand pads across components") {
  const auto dir = temp_dir();
  const auto csv = dir / "two.csv";
  write_file(csv, "0,10\n10,0\n");
  const auto labels = dir / "labels.txt";
  write_file(labels, "1\n2\n");
  const auto r = run_cli("rho --input " + csv.string() + " --eps 1 --labels " +
                         labels.string() + " --from 0 --to 1");
  CHECK(r.exit_code == 0);
  CHECK(std::stod(r.output) == doctest::Approx(3.0));

  // default labeling is constant 1
  const auto def = run_cli("rho --input " + csv.string() + " --eps 1 --from 0 --to 1");
  CHECK(def.exit_code == 0);
  CHECK(std::stod(def.output) == doctest::Approx(2.0));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("components").exit_code == 2);             // missing required flags
  CHECK(run_cli("components --input x.csv --eps 0.5 --bogus 1").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
  CHECK(run_cli("verify --suite no_such_suite").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("validation failures exit with 1") {
  const auto dir = temp_dir();
  const auto csv = dir / "bad.csv";
  write_file(csv, "0,1\n2,0\n");  // asymmetric
  const auto r = run_cli("components --input " + csv.string() + " --eps 0.5");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("asymmetry") != std::string::npos);
  CHECK(run_cli("components --input /does/not/exist.csv --eps 0.5").exit_code == 1);
}

TEST_CASE("generate, analyze, and re-run byte-identically") {
  const auto dir = temp_dir();
  const auto csv = dir / "recip.csv";
  const auto gen = run_cli("generate --family reciprocal_set --params 30 --out " +
                           csv.string());
  CHECK(gen.exit_code == 0);

  const auto r1 = dir / "report1.json";
  const auto r2 = dir / "report2.json";
  const std::string analyze_args = "analyze --input " + csv.string() +
                                   " --eps-grid 0.05:0.25:0.05 --m-grid 1,2,inf --out ";
  CHECK(run_cli(analyze_args + r1.string()).exit_code == 0);
  CHECK(run_cli(analyze_args + r2.string()).exit_code == 0);
  const std::string body1 = read_file(r1);
  CHECK(!body1.empty());
  CHECK(body1 == read_file(r2));

  const auto parsed = nlohmann::json::parse(body1);
  CHECK(parsed["schema_version"] == 1);
  CHECK(parsed["space"] == "external");
  CHECK(parsed["subsets"].size() == 1);
  CHECK(parsed["m_grid"].size() == 3);
}

TEST_CASE("analyze is byte-identical when several divergence flags fire") {
  const auto dir = temp_dir();
  const auto csv = dir / "rays.csv";
  CHECK(run_cli("generate --family orthonormal_rays --params 8,3 --out " + csv.string())
            .exit_code == 0);
  const auto tips = dir / "tips.txt";
  write_file(tips, "3\n6\n9\n12\n15\n18\n21\n24\n");

  const auto r1 = dir / "rays1.json";
  const auto r2 = dir / "rays2.json";
  const std::string args = "analyze --input " + csv.string() + " --subset " +
                           tips.string() + " --eps-grid 0.4,0.8 --m-grid 1,3,inf --out ";
  CHECK(run_cli(args + r1.string()).exit_code == 0);
  CHECK(run_cli(args + r2.string()).exit_code == 0);
  const std::string body = read_file(r1);
  CHECK(body == read_file(r2));

  const auto parsed = nlohmann::json::parse(body);
  REQUIRE(parsed["flags"].size() >= 2);
  CHECK(parsed["flags"][0]["net_size"] == 8);
  CHECK(parsed["flags"][0]["chain_size"] == 1);
  const std::string cls = parsed["subsets"][0]["classification"];
  CHECK(cls.find("8 vs 1") != std::string::npos);
}

TEST_CASE("verify subcommand runs a small suite cleanly") {
  const auto r = run_cli("verify --suite metric --instances 5 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}
