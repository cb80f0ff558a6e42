#include "commands.hpp"

#include "fsph/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace fsph;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result runArgs(std::vector<std::string> args) {
  args.insert(args.begin(), "fsph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("fsph_test_" + name);
  fs::remove_all(p);
  return p;
}

nlohmann::json readJson(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string readText(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("build D=3 Lambda=2 writes 9x9 matrices") {
  const fs::path out = scratch("build32");
  Result r = runArgs({"build", "--D", "3", "--Lambda", "2", "--out", out.string()});
  REQUIRE(r.code == 0);
  const fs::path dir = out / "D3_Lambda2";
  nlohmann::json params = readJson(dir / "params.json");
  CHECK(params["N"] == 9);
  CHECK(params["format_version"] == kFormatVersion);
  MatC x1 = matrixFromJson(readJson(dir / "matrices" / "x1.json"));
  CHECK(x1.rows() == 9);
  CHECK(x1.cols() == 9);
  CHECK(fs::exists(dir / "matrices" / "L1_2.re.csv"));
  CHECK(fs::exists(dir / "lifted" / "X3.json"));
  CHECK(fs::exists(dir / "cg.json"));
  CHECK(fs::exists(dir / "branching.json"));
  CHECK(fs::exists(dir / "spectrum.csv"));

  // the stored matrix reproduces the in-memory one
  FuzzyAlgebra alg = buildFuzzy(ModelParams::withDefaultK(3, 2));
  CHECK(maxAbs(x1 - alg.x(0)) == 0.0);
  // bases parse back into trace-free tensors
  nlohmann::json v2 = readJson(dir / "basis" / "V2.json");
  CHECK(v2["dim"] == 5);
  SymTensor t = symTensorFromJson(v2["tensors"][0]);
  CHECK(maxAbs(projectTraceFree(t).coeffs() - t.coeffs()) < 1e-14);

  // CSV rows
  std::istringstream csv(readText(dir / "matrices" / "x1.re.csv"));
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("build is byte-for-byte deterministic") {
  const fs::path a = scratch("detA"), b = scratch("detB");
  REQUIRE(runArgs({"build", "--D", "2", "--Lambda", "2", "--out", a.string()}).code == 0);
  REQUIRE(runArgs({"build", "--D", "2", "--Lambda", "2", "--out", b.string()}).code == 0);
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    ++files;
    CHECK(readText(e.path()) == readText(b / fs::relative(e.path(), a)));
  }
  CHECK(files > 10);
}

TEST_CASE("build D=2 Lambda=0 is the trivial algebra") {
  const fs::path out = scratch("build20");
  REQUIRE(runArgs({"build", "--D", "2", "--Lambda", "0", "--out", out.string()}).code == 0);
  MatC x = matrixFromJson(readJson(out / "D2_Lambda0" / "matrices" / "x1.json"));
  CHECK(x.rows() == 1);
  CHECK(x.cols() == 1);
  CHECK(std::abs(x(0, 0)) == 0.0);
}

TEST_CASE("configuration errors exit with code 2") {
  Result r = runArgs({"build", "--D", "3", "--Lambda", "2", "--k", "1", "--out", scratch("bad").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("config error") != std::string::npos);
  CHECK(runArgs({"build", "--D", "1"}).code == 2);
  CHECK(runArgs({"verify", "--suite", "nonsense"}).code == 2);
  CHECK(runArgs({"verify", "--Lambda-sweep", "3..1"}).code == 2);
  CHECK(runArgs({"verify", "--Lambda", "x"}).code == 2);
  CHECK(runArgs({}).code == 2);
  Result parse = runArgs({"converge", "--D", "3", "--f", "t1 * q7"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("'q7'") != std::string::npos);
}

TEST_CASE("sweep and suite parsing") {
  CHECK(cli::parseSweep("2..4") == std::vector<int>{2, 3, 4});
  CHECK(cli::parseSweep("3") == std::vector<int>{3});
  CHECK_THROWS_AS(cli::parseSweep("a..2"), ConfigError);
  CHECK(cli::parseSuites("all").size() == cli::kSuites.size());
  CHECK(cli::parseSuites("cg,lift,cg") == std::vector<std::string>{"cg", "lift"});
}

TEST_CASE("verify lift D=2 Lambda=1") {
  Result r = runArgs({"verify", "--suite", "lift", "--D", "2", "--Lambda", "1"});
  CHECK(r.code == 0);
  cli::RunConfig cfg;
  cfg.D = 2;
  cfg.lambdas = {1};
  cfg.suites = {"lift"};
  nlohmann::json rep = cli::cmdVerify(cfg);
  CHECK(rep["pass"] == true);
  for (const auto& c : rep["suites"][0]["checks"])
    if (c["id"] == "lift.x") CHECK(c["residual"].get<double>() <= 1e-9);
}

TEST_CASE("verify fuzzy D=3 Lambda=3 and report layout") {
  const fs::path out = scratch("verify");
  Result r = runArgs({"verify", "--suite", "fuzzy", "--D", "3", "--Lambda", "3", "--out", out.string(), "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("overall PASS") != std::string::npos);
  nlohmann::json rep = readJson(out / "verify_D3.json");
  CHECK(rep["format_version"] == kFormatVersion);
  CHECK(rep["params"]["D"] == 3);
  for (const auto& c : rep["suites"][0]["checks"]) {
    CHECK(c.contains("id"));
    CHECK(c.contains("relation"));
    CHECK(c.contains("tolerance"));
  }
}

TEST_CASE("verify is deterministic across thread counts") {
  cli::RunConfig cfg;
  cfg.D = 3;
  cfg.lambdas = {1, 2};
  cfg.suites = {"harmonic", "cg", "lift", "radial", "converge"};
  cfg.jobs = 1;
  nlohmann::json a = cli::cmdVerify(cfg);
  cfg.jobs = 4;
  nlohmann::json b = cli::cmdVerify(cfg);
  REQUIRE(a["suites"].size() == b["suites"].size());
  for (std::size_t i = 0; i < a["suites"].size(); ++i) CHECK(a["suites"][i]["checks"] == b["suites"][i]["checks"]);
  CHECK(a["pass"] == true);
}

TEST_CASE("suite errors are recorded with their class") {
  // the lifted irrep needs D + 1 <= 16 index values
  cli::RunConfig cfg;
  cfg.D = 16;
  cfg.lambdas = {0};
  cfg.suites = {"lift"};
  nlohmann::json rep = cli::cmdVerify(cfg);
  CHECK(rep["pass"] == false);
  const auto& c = rep["suites"][0]["checks"][0];
  CHECK(c["id"] == "lift.error");
  CHECK(c["note"].get<std::string>().rfind("ConfigError", 0) == 0);
}

TEST_CASE("converge") {
  Result r = runArgs({"converge", "--D", "3", "--Lambda-sweep", "1..6", "--f", "t1", "--phi", "1"});
  REQUIRE(r.code == 0);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("Lambda,", 0) == 0);
  double prev = 1e9;
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    const double norm = std::stod(f[2]), bound = std::stod(f[3]);
    CHECK(norm < prev);
    CHECK(norm <= bound);
    prev = norm;
    ++rows;
  }
  CHECK(rows == 6);

  Result c = runArgs({"converge", "--D", "3", "--Lambda-sweep", "2..4", "--f", "2.5", "--phi", "t1*t2"});
  REQUIRE(c.code == 0);
  std::istringstream cc(c.out);
  std::getline(cc, line);
  while (std::getline(cc, line)) {
    std::stringstream ls(line);
    std::string cell;
    for (int i = 0; i < 3; ++i) std::getline(ls, cell, ',');
    CHECK(std::abs(std::stod(cell)) < 1e-12);
  }
}

TEST_CASE("output directory from the environment") {
  const fs::path out = scratch("env");
  setenv(cli::kOutEnv, out.string().c_str(), 1);
  cli::RunConfig cfg;
  CHECK(cli::outputDir(cfg) == out);
  cfg.out = "elsewhere";
  CHECK(cli::outputDir(cfg) == fs::path("elsewhere"));
  unsetenv(cli::kOutEnv);
  CHECK(cli::outputDir(cli::RunConfig{}) == fs::path("fsph_out"));
}

TEST_CASE("IO failures exit with code 1") {
  const fs::path blocker = scratch("blocker");
  { std::ofstream(blocker) << "file, not a directory"; }
  Result r = runArgs({"build", "--D", "2", "--Lambda", "1", "--out", (blocker / "sub").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("io error") != std::string::npos);
}
