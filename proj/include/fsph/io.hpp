#pragma once

#include "fsph/cg.hpp"
#include "fsph/liftso.hpp"
#include "fsph/radial.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace fsph {

inline constexpr int kFormatVersion = 1;

// {dim, rank, entries: [{idx (1-based), re, im}]}, nonzero entries only.
nlohmann::json toJson(const SymTensor& t);
SymTensor symTensorFromJson(const nlohmann::json& j);

// {rows, cols, re: [[...]], im: [[...]]}
nlohmann::json toJson(const MatC& m);
MatC matrixFromJson(const nlohmann::json& j);

nlohmann::json toJson(const ModelParams& p);
nlohmann::json toJson(const CgTable& t);
nlohmann::json toJson(const BranchingData& br);
nlohmann::json toJson(const ConfinementModel& m);
nlohmann::json toJson(const SpectrumTable& t);

// Row-major CSV with 17 significant digits; one file per real/imaginary part.
std::string matrixCsv(const Eigen::MatrixXd& m);
std::string spectrumCsv(const SpectrumTable& t);
std::string convergenceCsv(const ConvergenceTable& t);
std::string wavefunctionCsv(const OdeResult& r);

// Writes text, creating parent directories. IoError on failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
void writeText(const std::filesystem::path& path, const std::string& text);
void writeJson(const std::filesystem::path& path, const nlohmann::json& j);
// <stem>.json plus <stem>.re.csv and <stem>.im.csv
void writeMatrix(const std::filesystem::path& dir, const std::string& stem, const MatC& m);

}  // namespace fsph
