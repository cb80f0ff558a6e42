#pragma once

#include "fsph/fuzzy.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fsph::cli {

inline const std::vector<std::string> kSuites{"projector", "harmonic", "fuzzy", "cg", "lift", "radial", "converge"};
inline constexpr const char* kOutEnv = "FSPH_OUT_DIR";

struct RunConfig {
  int D = 3;
  std::vector<int> lambdas{1};
  std::optional<double> k;  // explicit k; default rule otherwise
  std::optional<double> tol;
  std::optional<std::string> out;
  std::vector<std::string> suites{kSuites};
  int jobs = 0;  // 0: hardware concurrency
  std::string f = "t1";
  std::string phi = "1";
};

// "a..b" or a single integer. ConfigError otherwise.
std::vector<int> parseSweep(const std::string& text);
// Comma-separated suite names, "all" expands. ConfigError on unknown names.
std::vector<std::string> parseSuites(const std::string& text);
// Validated model parameters for one cutoff; ConfigError on violation.
ModelParams modelFor(const RunConfig& cfg, int Lambda);
// --out, else $FSPH_OUT_DIR, else "fsph_out".
std::filesystem::path outputDir(const RunConfig& cfg);

// Writes <out>/D<D>_Lambda<L>/ for every cutoff; returns the directories.
std::vector<std::filesystem::path> cmdBuild(const RunConfig& cfg);
// Runs the selected suites in a worker pool; exceptions become failed checks.
nlohmann::json cmdVerify(const RunConfig& cfg);
std::string cmdConverge(const RunConfig& cfg);

// Full command line entry point; returns the process exit code
// (0 pass, 1 check failure or IO error, 2 configuration error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsph::cli
