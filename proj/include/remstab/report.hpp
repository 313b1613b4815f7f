#pragma once

#include "remstab/linalg.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace remstab {

enum class Verdict { GMU_STABLE, INCONCLUSIVE, NOT_APPLICABLE };
enum class Route { REM_POSITIVE_BRANCH, REM_DEFINITE_BRANCH, BLOCK_COROLLARY, ORACLE_ONLY };

const char* to_string(Verdict v);
const char* to_string(Route r);
Verdict verdict_from_string(const std::string& s);
Route route_from_string(const std::string& s);

struct StabilityReport {
  Verdict verdict = Verdict::INCONCLUSIVE;
  Route route = Route::REM_POSITIVE_BRANCH;
  int dim_check = 0;
  std::map<std::string, std::vector<double>> block_spectra;
  std::map<std::string, double> residuals;
  std::vector<std::string> assumptions;
  nlohmann::json parameters = nlohmann::json::object();

  bool operator==(const StabilityReport&) const = default;
};

nlohmann::json to_json(const StabilityReport& r);
StabilityReport report_from_json(const nlohmann::json& j);

}  // namespace remstab
