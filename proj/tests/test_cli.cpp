#include "doctest.h"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

fs::path scratch_dir(const std::string& name) {
  static const fs::path root = [] {
    auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    fs::path r = fs::temp_directory_path() / ("ratl2_cli_" + std::to_string(stamp));
    fs::create_directories(r);
    return r;
  }();
  fs::path d = root / name;
  fs::create_directories(d);
  return d;
}

RunResult run_tool(const fs::path& dir, const std::string& args) {
  fs::path out = dir / "stdout.txt";
  fs::path err = dir / "stderr.txt";
  std::string cmd = std::string(RATL2_BIN_PATH) + " " + args + " > " + out.string() +
                    " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string markov_config(const fs::path& outputs, int lo, int hi) {
  std::ostringstream ss;
  ss << "{\n"
     << "  \"target\": {\"a\": -0.4, \"b\": 0.4, \"density\": {\"kind\": \"expr\", \"expr\": \"1\"}},\n"
     << "  \"degrees\": [" << lo << ", " << hi << "],\n"
     << "  \"starts\": 2,\n"
     << "  \"seed\": 5,\n"
     << "  \"outputs\": \"" << outputs.string() << "\"\n"
     << "}\n";
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream ss(csv);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("cli solve writes a deterministic run record") {
  REQUIRE(fs::exists(RATL2_BIN_PATH));
  fs::path dir = scratch_dir("solve");
  fs::path outputs = dir / "runs";
  write_file(dir / "cfg.json", markov_config(outputs, 1, 2));

  RunResult r = run_tool(dir, "solve -c " + (dir / "cfg.json").string());
  REQUIRE(r.exit_code == 0);

  // stdout is the path of the run record, named by the config hash
  std::string path = r.out;
  while (!path.empty() && (path.back() == '\n' || path.back() == '\r')) path.pop_back();
  REQUIRE(fs::exists(path));
  CHECK(fs::path(path).parent_path() == outputs);
  CHECK(fs::path(path).extension() == ".json");
  CHECK(fs::path(path).stem().string().size() == 16);

  json run = json::parse(slurp(path));
  CHECK(run.at("tool_version").get<std::string>() == "0.1.0");
  CHECK(run.at("config_hash").get<std::string>() == fs::path(path).stem().string());
  REQUIRE(run.at("degrees").size() == 2);
  for (const json& dj : run.at("degrees")) {
    CHECK(dj.at("records").size() >= 1);
    CHECK(dj.at("start_map").size() == 2);
    const json& rec = dj.at("records")[0];
    CHECK(rec.contains("q_coeffs"));
    CHECK(rec.contains("value"));
    CHECK(rec.contains("grad_norm"));
    CHECK(rec.contains("poles"));
    CHECK(rec.at("grad_norm").get<double>() < 1e-10);
  }
  CHECK(run.at("wall_time_seconds").get<double>() >= 0.0);

  // a second identical invocation reproduces the record except the timing
  json first = run;
  RunResult r2 = run_tool(dir, "solve -c " + (dir / "cfg.json").string());
  REQUIRE(r2.exit_code == 0);
  json second = json::parse(slurp(path));
  first.erase("wall_time_seconds");
  second.erase("wall_time_seconds");
  CHECK(first == second);
}

TEST_CASE("cli rejects malformed configs") {
  fs::path dir = scratch_dir("badcfg");
  write_file(dir / "bad.json",
             "{\"target\": {\"a\": 0.5, \"b\": 0.3, \"density\": {\"kind\": \"expr\", "
             "\"expr\": \"1\"}}, \"degrees\": [1, 2]}");
  RunResult r = run_tool(dir, "solve -c " + (dir / "bad.json").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("a < b required") != std::string::npos);

  RunResult missing = run_tool(dir, "verify -c " + (dir / "bad.json").string() + " -r " +
                                        (dir / "no_such_run.json").string());
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("error:") != std::string::npos);
}

TEST_CASE("cli verify emits asymptotics tables") {
  fs::path dir = scratch_dir("verify");
  fs::path outputs = dir / "runs";
  write_file(dir / "cfg.json", markov_config(outputs, 1, 2));
  RunResult solve = run_tool(dir, "solve -c " + (dir / "cfg.json").string());
  REQUIRE(solve.exit_code == 0);
  std::string run_path = solve.out.substr(0, solve.out.find('\n'));

  RunResult v = run_tool(dir, "verify -c " + (dir / "cfg.json").string() + " -r " + run_path);
  REQUIRE(v.exit_code == 0);
  std::string csv = slurp(outputs / "asymptotics.csv");
  std::vector<std::string> lines = data_lines(csv);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n,sup_error,predicted,ratio_deviation");
  CHECK(lines[1].substr(0, 2) == "1,");
  CHECK(lines[2].substr(0, 2) == "2,");
  CHECK(fs::exists(outputs / "asymptotics.json"));
  // two degrees are not enough for pole diagnostics
  CHECK(!fs::exists(outputs / "poles.csv"));
  CHECK(v.err.find("poles.csv skipped") != std::string::npos);
}

TEST_CASE("cli verify refuses single degree runs") {
  fs::path dir = scratch_dir("verify1");
  fs::path outputs = dir / "runs";
  write_file(dir / "cfg.json", markov_config(outputs, 2, 2));
  RunResult solve = run_tool(dir, "solve -c " + (dir / "cfg.json").string());
  REQUIRE(solve.exit_code == 0);
  std::string run_path = solve.out.substr(0, solve.out.find('\n'));

  RunResult v = run_tool(dir, "verify -c " + (dir / "cfg.json").string() + " -r " + run_path);
  CHECK(v.exit_code == 1);
  CHECK(v.err.find("need >= 2 degrees") != std::string::npos);
}

TEST_CASE("cli criterion self test and report") {
  fs::path dir = scratch_dir("reports");
  fs::path outputs = dir / "runs";
  write_file(dir / "cfg.json", markov_config(outputs, 1, 3));
  RunResult solve = run_tool(dir, "solve -c " + (dir / "cfg.json").string());
  REQUIRE(solve.exit_code == 0);
  std::string run_path = solve.out.substr(0, solve.out.find('\n'));

  RunResult c = run_tool(dir, "criterion -c " + (dir / "cfg.json").string() + " -r " +
                                  run_path + " --self");
  REQUIRE(c.exit_code == 0);
  std::vector<std::string> clines = data_lines(slurp(outputs / "criterion.csv"));
  REQUIRE(clines.size() >= 2);
  CHECK(clines[0] == "n,min_ratio,winding,passed");
  for (size_t i = 1; i < clines.size(); ++i) {
    // self comparison always yields ratio zero and no pass
    std::istringstream row(clines[i]);
    std::string n, ratio, winding, passed;
    std::getline(row, n, ',');
    std::getline(row, ratio, ',');
    std::getline(row, winding, ',');
    std::getline(row, passed, ',');
    CHECK(std::abs(std::stod(ratio)) < 1e-6);
    CHECK(passed == "false");
  }

  fs::path rep_dir = dir / "rep";
  RunResult rep = run_tool(dir, "report -r " + run_path + " -o " + rep_dir.string());
  REQUIRE(rep.exit_code == 0);
  std::vector<std::string> slines = data_lines(slurp(rep_dir / "summary.csv"));
  REQUIRE(slines.size() == 4);
  CHECK(slines[0] ==
        "degree,distinct,converged_starts,failed_starts,best_value,best_grad_norm,"
        "best_morse_index,best_irreducible");
  for (size_t i = 1; i < slines.size(); ++i) {
    std::istringstream row(slines[i]);
    std::string degree, distinct, conv, failed;
    std::getline(row, degree, ',');
    std::getline(row, distinct, ',');
    std::getline(row, conv, ',');
    std::getline(row, failed, ',');
    CHECK(distinct == "1");
    CHECK(conv == "2");
    CHECK(failed == "0");
  }
  // three degrees allow the pole clustering table
  CHECK(fs::exists(rep_dir / "poles.csv"));
}
