#include "fsph/report.hpp"

#include <cmath>
#include <limits>

namespace fsph {

Check makeCheck(std::string id, std::string relation, double residual, double tolerance, std::string note) {
  Check c;
  c.id = std::move(id);
  c.relation = std::move(relation);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual >= 0 && residual <= tolerance;
  c.note = std::move(note);
  return c;
}

Check skippedCheck(std::string id, std::string relation, std::string reason) {
  Check c;
  c.id = std::move(id);
  c.relation = std::move(relation);
  c.pass = true;
  c.skipped = true;
  c.note = std::move(reason);
  return c;
}

Check failedCheck(std::string id, std::string relation, std::string error) {
  Check c;
  c.id = std::move(id);
  c.relation = std::move(relation);
  c.residual = std::numeric_limits<double>::infinity();
  c.pass = false;
  c.note = std::move(error);
  return c;
}

void Report::append(const Report& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool Report::allPass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks_)
    if (c.id == id) return &c;
  return nullptr;
}

nlohmann::json toJson(const Check& c) {
  nlohmann::json j{{"id", c.id}, {"relation", c.relation}, {"pass", c.pass}, {"tolerance", c.tolerance}};
  // JSON has no infinity; errors carry residual null plus a note.
  if (std::isfinite(c.residual))
    j["residual"] = c.residual;
  else
    j["residual"] = nullptr;
  if (c.skipped) j["skipped"] = true;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

nlohmann::json Report::toJson() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks_) arr.push_back(fsph::toJson(c));
  return arr;
}

}  // namespace fsph
