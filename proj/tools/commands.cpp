#include "commands.hpp"

#include "fsph/io.hpp"
#include "fsph/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace fsph::cli {

namespace {

int toInt(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ConfigError(what + ": '" + s + "' is not an integer");
  return v;
}

std::string errorClass(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const ArgumentError*>(&e)) return "ArgumentError";
  if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  return "Error";
}

struct Task {
  std::string suite;
  int Lambda = -1;  // -1: the suite does not depend on the cutoff
};

Report runTask(const RunConfig& cfg, const Task& t) {
  if (t.suite == "projector") return projectorSuite(cfg.D, 6);
  if (t.suite == "harmonic") return harmonicSuite(cfg.D, t.Lambda);
  if (t.suite == "converge") {
    const int top = std::max(2, *std::max_element(cfg.lambdas.begin(), cfg.lambdas.end()));
    std::vector<int> ls;
    for (int l = 1; l <= top; ++l) ls.push_back(l);
    return convergeSuite(cfg.D, ls);
  }
  const ModelParams p = modelFor(cfg, t.Lambda);
  if (t.suite == "fuzzy") return fuzzySuite(p);
  if (t.suite == "cg") return cgSuite(p);
  if (t.suite == "lift") return liftSuite(p);
  if (t.suite == "radial") return radialSuite(p);
  throw ConfigError("unknown suite '" + t.suite + "'");
}

nlohmann::json basisJson(const HarmonicSpace& s) {
  nlohmann::json tensors = nlohmann::json::array();
  for (int b = 0; b < s.dim(); ++b) tensors.push_back(toJson(s.basisTensor(b)));
  return {{"format_version", kFormatVersion}, {"D", s.D()}, {"l", s.l()}, {"dim", s.dim()}, {"tensors", tensors}};
}

std::string label(int i) { return std::to_string(i + 1); }

}  // namespace

std::vector<int> parseSweep(const std::string& text) {
  const auto dots = text.find("..");
  std::vector<int> out;
  if (dots == std::string::npos) {
    out.push_back(toInt(text, "--Lambda-sweep"));
  } else {
    const int a = toInt(text.substr(0, dots), "--Lambda-sweep"), b = toInt(text.substr(dots + 2), "--Lambda-sweep");
    if (b < a) throw ConfigError("--Lambda-sweep: empty range '" + text + "'");
    for (int l = a; l <= b; ++l) out.push_back(l);
  }
  for (int l : out)
    if (l < 0) throw ConfigError("--Lambda-sweep: Lambda must be >= 0");
  return out;
}

std::vector<std::string> parseSuites(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") return kSuites;
    if (std::find(kSuites.begin(), kSuites.end(), item) == kSuites.end())
      throw ConfigError("--suite: unknown suite '" + item + "'");
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("--suite: no suite given");
  return out;
}

ModelParams modelFor(const RunConfig& cfg, int Lambda) {
  if (cfg.D < 2) throw ConfigError("--D must be >= 2");
  if (Lambda < 0) throw ConfigError("--Lambda must be >= 0");
  ModelParams p = cfg.k ? ModelParams::withExplicitK(cfg.D, Lambda, *cfg.k) : ModelParams::withDefaultK(cfg.D, Lambda);
  if (cfg.tol) p.tolerance = *cfg.tol;
  p.validate();
  return p;
}

std::filesystem::path outputDir(const RunConfig& cfg) {
  if (cfg.out) return *cfg.out;
  if (const char* env = std::getenv(kOutEnv); env && *env) return env;
  return "fsph_out";
}

std::vector<std::filesystem::path> cmdBuild(const RunConfig& cfg) {
  for (int L : cfg.lambdas) modelFor(cfg, L);
  std::vector<std::filesystem::path> dirs;
  for (int L : cfg.lambdas) {
    const ModelParams p = modelFor(cfg, L);
    const auto dir = outputDir(cfg) / ("D" + std::to_string(p.D) + "_Lambda" + std::to_string(L));
    FuzzyAlgebra alg = buildFuzzy(p);
    const int D = p.D;

    const auto mats = dir / "matrices";
    for (int i = 0; i < D; ++i) writeMatrix(mats, "x" + label(i), alg.x(i));
    for (int h = 0; h < D; ++h)
      for (int k = h + 1; k < D; ++k) writeMatrix(mats, "L" + label(h) + "_" + label(k), alg.L(h, k));
    writeMatrix(mats, "Lsq", alg.Lsq());
    writeMatrix(mats, "xsq", alg.xsq());
    for (int l = 0; l <= L; ++l) writeMatrix(mats, "P" + std::to_string(l), alg.blockProjector(l));

    LiftedIrrep lifted = buildLifted(D, L);
    BranchingData br = branchingCoefficients(p);
    const auto lift = dir / "lifted";
    for (int i = 0; i < D; ++i) writeMatrix(lift, "X" + label(i), lifted.X(i));
    writeMatrix(lift, "U", isomorphismUnitary(lifted, br));
    nlohmann::json brJ = toJson(br);
    brJ["format_version"] = kFormatVersion;
    writeJson(dir / "branching.json", brJ);

    for (int l = 0; l <= L; ++l) writeJson(dir / "basis" / ("V" + std::to_string(l) + ".json"), basisJson(alg.basis().space(l)));

    nlohmann::json cg = nlohmann::json::array();
    for (int l = 0; l <= L; ++l)
      for (int m = 0; m <= L; ++m) cg.push_back(toJson(cgTable(p, l, m)));
    writeJson(dir / "cg.json", {{"format_version", kFormatVersion}, {"tables", cg}});

    ConfinementModel model(p);
    SpectrumTable spec = spectrumHarmonic(model);
    writeJson(dir / "radial.json",
              {{"format_version", kFormatVersion}, {"model", toJson(model)}, {"spectrum", toJson(spec)}});
    writeText(dir / "spectrum.csv", spectrumCsv(spec));

    nlohmann::json dims = nlohmann::json::array();
    for (int l = 0; l <= L; ++l) dims.push_back(alg.basis().space(l).dim());
    writeJson(dir / "params.json", {{"format_version", kFormatVersion},
                                    {"params", toJson(p)},
                                    {"N", alg.N()},
                                    {"block_dims", dims},
                                    {"index_base", 1}});
    dirs.push_back(dir);
  }
  return dirs;
}

nlohmann::json cmdVerify(const RunConfig& cfg) {
  for (int L : cfg.lambdas) modelFor(cfg, L);
  std::vector<Task> tasks;
  for (const auto& s : cfg.suites) {
    if (s == "projector" || s == "converge") tasks.push_back({s, -1});
    else
      for (int L : cfg.lambdas) tasks.push_back({s, L});
  }
  std::vector<Report> reports(tasks.size());
  std::vector<double> seconds(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        reports[i] = runTask(cfg, tasks[i]);
      } catch (const std::exception& e) {
        reports[i].add(failedCheck(tasks[i].suite + ".error", "suite ran to completion", errorClass(e) + ": " + e.what()));
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  nlohmann::json suites = nlohmann::json::array();
  bool pass = true;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const bool ok = reports[i].allPass();
    pass = pass && ok;
    suites.push_back({{"suite", tasks[i].suite},
                      {"Lambda", tasks[i].Lambda < 0 ? nlohmann::json(nullptr) : nlohmann::json(tasks[i].Lambda)},
                      {"pass", ok},
                      {"duration_s", seconds[i]},
                      {"checks", reports[i].toJson()}});
  }
  nlohmann::json params = {{"D", cfg.D}, {"Lambda", cfg.lambdas}, {"kRule", cfg.k ? "explicit" : "default"}};
  if (cfg.k) params["k"] = *cfg.k;
  if (cfg.tol) params["tolerance"] = *cfg.tol;
  return {{"format_version", kFormatVersion}, {"params", params}, {"suites", suites}, {"pass", pass}};
}

std::string cmdConverge(const RunConfig& cfg) {
  for (int L : cfg.lambdas) modelFor(cfg, L);
  Polynomial f, phi;
  try {
    f = parsePolynomial(cfg.f, cfg.D);
    phi = parsePolynomial(cfg.phi, cfg.D);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  return convergenceCsv(convergenceExperiment(cfg.D, f, phi, cfg.lambdas, cfg.k.value_or(0)));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy hyperspheres: build, verify and convergence runs"};
  app.require_subcommand(1);
  RunConfig cfg;
  int Lambda = 1;
  std::string sweep, suites = "all";
  double k = 0, tol = 0;
  std::string outDir;

  auto common = [&](CLI::App* c) {
    c->add_option("--D", cfg.D, "ambient dimension (>= 2)")->capture_default_str();
    auto* lam = c->add_option("--Lambda", Lambda, "cutoff (>= 0)")->capture_default_str();
    c->add_option("--Lambda-sweep", sweep, "cutoff range a..b")->excludes(lam);
    c->add_option("--k", k, "explicit k (default: Lambda^2 (Lambda+D-2)^2)");
    c->add_option("--out", outDir, std::string("output directory (default: $") + kOutEnv + " or fsph_out)");
    c->add_option("--tol", tol, "tolerance for the model construction and relation checks");
  };
  auto* build = app.add_subcommand("build", "write matrices, bases, CG tables and branching data");
  auto* verify = app.add_subcommand("verify", "run verification suites, exit 0 iff all pass");
  auto* converge = app.add_subcommand("converge", "CSV of ||(f-hat - f) phi|| against the bound per cutoff");
  for (auto* c : {build, verify, converge}) common(c);
  verify->add_option("--suite", suites, "comma list of projector|harmonic|fuzzy|cg|lift|radial|converge|all")
      ->capture_default_str();
  verify->add_option("--jobs", cfg.jobs, "worker threads (default: hardware concurrency)");
  converge->add_option("--f", cfg.f, "polynomial f, e.g. \"t1*t2 - 0.5\"")->capture_default_str();
  converge->add_option("--phi", cfg.phi, "polynomial phi")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto* sub = app.get_subcommands().front();
    cfg.lambdas = sweep.empty() ? std::vector<int>{Lambda} : parseSweep(sweep);
    if (sub->count("--k")) cfg.k = k;
    if (sub->count("--tol")) cfg.tol = tol;
    if (sub->count("--out")) cfg.out = outDir;
    if (sub == verify) cfg.suites = parseSuites(suites);
    if (sub == converge && sweep.empty()) {
      cfg.lambdas.clear();
      for (int l = 1; l <= std::max(1, Lambda); ++l) cfg.lambdas.push_back(l);
    }

    if (sub == build) {
      for (const auto& d : cmdBuild(cfg)) out << "wrote " << d.string() << '\n';
      return 0;
    }
    if (sub == verify) {
      nlohmann::json rep = cmdVerify(cfg);
      for (const auto& s : rep["suites"]) {
        int n = 0, failed = 0;
        for (const auto& c : s["checks"]) {
          ++n;
          if (!c["pass"].get<bool>() && !c.value("skipped", false)) ++failed;
        }
        out << (s["pass"].get<bool>() ? "PASS " : "FAIL ") << s["suite"].get<std::string>();
        if (!s["Lambda"].is_null()) out << " Lambda=" << s["Lambda"].get<int>();
        out << "  " << n << " checks, " << failed << " failed\n";
        for (const auto& c : s["checks"])
          if (!c["pass"].get<bool>() && !c.value("skipped", false))
            out << "    " << c["id"].get<std::string>() << ": " << c["relation"].get<std::string>()
                << "  residual " << c["residual"] << " > " << c["tolerance"]
                << (c.contains("note") ? "  (" + c["note"].get<std::string>() + ")" : "") << '\n';
      }
      out << (rep["pass"].get<bool>() ? "overall PASS" : "overall FAIL") << '\n';
      if (cfg.out || std::getenv(kOutEnv)) {
        const auto path = outputDir(cfg) / ("verify_D" + std::to_string(cfg.D) + ".json");
        writeJson(path, rep);
        out << "wrote " << path.string() << '\n';
      }
      return rep["pass"].get<bool>() ? 0 : 1;
    }
    const std::string csv = cmdConverge(cfg);
    out << csv;
    if (cfg.out) writeText(*cfg.out / std::filesystem::path("converge_D" + std::to_string(cfg.D) + ".csv"), csv);
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << errorClass(e) << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fsph::cli
