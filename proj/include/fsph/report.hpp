#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace fsph {

struct Check {
  std::string id;        // stable identifier, e.g. "fuzzy.snyder"
  std::string relation;  // human-readable statement of what was compared
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

// pass = residual finite and <= tolerance.
Check makeCheck(std::string id, std::string relation, double residual, double tolerance, std::string note = {});
Check skippedCheck(std::string id, std::string relation, std::string reason);
Check failedCheck(std::string id, std::string relation, std::string error);

class Report {
 public:
  void add(Check c) { checks_.push_back(std::move(c)); }
  void append(const Report& other);
  const std::vector<Check>& checks() const { return checks_; }
  bool allPass() const;
  const Check* find(const std::string& id) const;
  nlohmann::json toJson() const;

 private:
  std::vector<Check> checks_;
};

nlohmann::json toJson(const Check& c);

}  // namespace fsph
