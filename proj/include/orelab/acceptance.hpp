#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace orelab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
  nlohmann::json data;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // empty: all criteria
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

nlohmann::json to_json(const CriterionResult& r);
/// "[PASS] 1 Leibniz suite (2.31 s / 30 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace orelab
