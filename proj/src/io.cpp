#include "fsph/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fsph {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json rows(const Eigen::MatrixXd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

nlohmann::json toJson(const SymTensor& t) {
  nlohmann::json entries = nlohmann::json::array();
  const IndexSpace& s = t.indices();
  for (int a = 0; a < s.size(); ++a) {
    const cplx v = t.coeffs()[a];
    if (v == cplx(0)) continue;
    std::vector<int> idx;
    for (int e : s[a].entries) idx.push_back(e + 1);
    entries.push_back({{"idx", idx}, {"re", v.real()}, {"im", v.imag()}});
  }
  return {{"dim", t.dim()}, {"rank", t.rank()}, {"entries", entries}};
}

SymTensor symTensorFromJson(const nlohmann::json& j) {
  SymTensor t(j.at("dim").get<int>(), j.at("rank").get<int>());
  for (const auto& e : j.at("entries")) {
    std::vector<int> idx = e.at("idx").get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != t.rank()) throw ArgumentError("symTensorFromJson: index of wrong rank");
    for (int& i : idx) {
      if (i < 1 || i > t.dim()) throw ArgumentError("symTensorFromJson: index label out of range");
      --i;
    }
    t.at(idx) = cplx(e.at("re").get<double>(), e.value("im", 0.0));
  }
  return t;
}

nlohmann::json toJson(const MatC& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", rows(m.real())}, {"im", rows(m.imag())}};
}

MatC matrixFromJson(const nlohmann::json& j) {
  const int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
  MatC m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = cplx(j.at("re").at(i).at(k).get<double>(), j.at("im").at(i).at(k).get<double>());
  return m;
}

nlohmann::json toJson(const ModelParams& p) {
  return {{"D", p.D},
          {"Lambda", p.Lambda},
          {"k", p.k},
          {"kRule", p.kRule == KRule::Default ? "default" : "explicit"},
          {"tolerance", p.tolerance}};
}

nlohmann::json toJson(const CgTable& t) {
  return {{"D", t.D}, {"l", t.l}, {"m", t.m}, {"channels", t.channels}, {"N", t.classical}, {"Nhat", t.fuzzy}};
}

nlohmann::json toJson(const BranchingData& br) {
  nlohmann::json a = nlohmann::json::array();
  for (const cplx& v : br.a) a.push_back({{"re", v.real()}, {"im", v.imag()}});
  return {{"D", br.D}, {"Lambda", br.Lambda}, {"k", br.k}, {"b", br.b}, {"p", br.p},
          {"a", a},    {"mu", br.mu},         {"m", br.m}};
}

nlohmann::json toJson(const ConfinementModel& m) {
  nlohmann::json levels = nlohmann::json::array();
  for (int l = 0; l <= m.Lambda + 2; ++l)
    levels.push_back({{"l", l}, {"b", m.b(l)}, {"k_l", m.kl(l)}, {"r_tilde", m.rTilde(l)}});
  return {{"D", m.D}, {"Lambda", m.Lambda}, {"k", m.k}, {"V0", m.V0()}, {"cutoff", m.cutoff()}, {"levels", levels}};
}

nlohmann::json toJson(const SpectrumTable& t) {
  nlohmann::json rowsJ = nlohmann::json::array();
  for (const auto& r : t.rows)
    rowsJ.push_back({{"n", r.n}, {"l", r.l}, {"E", r.energy}, {"E_leading", r.leading}, {"kept", r.kept}});
  return {{"rows", rowsJ}, {"excited_margin", t.excitedMargin}};
}

std::string matrixCsv(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << num(m(r, c));
    os << '\n';
  }
  return os.str();
}

std::string spectrumCsv(const SpectrumTable& t) {
  std::ostringstream os;
  os << "n,l,E,E_leading,kept\n";
  for (const auto& r : t.rows) os << r.n << ',' << r.l << ',' << num(r.energy) << ',' << num(r.leading) << ',' << r.kept << '\n';
  return os.str();
}

std::string convergenceCsv(const ConvergenceTable& t) {
  std::ostringstream os;
  os << "Lambda,k,norm,bound,epsilon,eta,within_bound\n";
  for (const auto& r : t.rows)
    os << r.Lambda << ',' << num(r.k) << ',' << num(r.norm) << ',' << num(r.bound) << ',' << num(r.epsilon) << ','
       << num(r.eta) << ',' << r.withinBound << '\n';
  return os.str();
}

std::string wavefunctionCsv(const OdeResult& r) {
  std::ostringstream os;
  os << "r,g\n";
  for (std::size_t i = 0; i < r.r.size(); ++i) os << num(r.r[i]) << ',' << num(r.g[i]) << '\n';
  return os.str();
}

void writeText(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void writeJson(const std::filesystem::path& path, const nlohmann::json& j) { writeText(path, j.dump(2) + "\n"); }

void writeMatrix(const std::filesystem::path& dir, const std::string& stem, const MatC& m) {
  nlohmann::json j = toJson(m);
  j["format_version"] = kFormatVersion;
  writeJson(dir / (stem + ".json"), j);
  writeText(dir / (stem + ".re.csv"), matrixCsv(m.real()));
  writeText(dir / (stem + ".im.csv"), matrixCsv(m.imag()));
}

}  // namespace fsph
