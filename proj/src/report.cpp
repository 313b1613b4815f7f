#include "remstab/report.hpp"

#include <cmath>

namespace remstab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::GMU_STABLE: return "GMU_STABLE";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
    case Verdict::NOT_APPLICABLE: return "NOT_APPLICABLE";
  }
  return "?";
}

const char* to_string(Route r) {
  switch (r) {
    case Route::REM_POSITIVE_BRANCH: return "REM_POSITIVE_BRANCH";
    case Route::REM_DEFINITE_BRANCH: return "REM_DEFINITE_BRANCH";
    case Route::BLOCK_COROLLARY: return "BLOCK_COROLLARY";
    case Route::ORACLE_ONLY: return "ORACLE_ONLY";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::GMU_STABLE, Verdict::INCONCLUSIVE, Verdict::NOT_APPLICABLE})
    if (s == to_string(v)) return v;
  throw ContractViolation("unknown verdict '" + s + "'");
}

Route route_from_string(const std::string& s) {
  for (Route r : {Route::REM_POSITIVE_BRANCH, Route::REM_DEFINITE_BRANCH, Route::BLOCK_COROLLARY,
                  Route::ORACLE_ONLY})
    if (s == to_string(r)) return r;
  throw ContractViolation("unknown route '" + s + "'");
}

nlohmann::json to_json(const StabilityReport& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  j["route"] = to_string(r.route);
  j["dim_check"] = r.dim_check;
  j["block_spectra"] = nlohmann::json::object();
  for (const auto& [k, v] : r.block_spectra) j["block_spectra"][k] = v;
  j["residuals"] = nlohmann::json::object();
  for (const auto& [k, v] : r.residuals) {
    // JSON has no infinities; the field is dropped rather than corrupted.
    if (std::isfinite(v)) j["residuals"][k] = v;
  }
  j["assumptions"] = r.assumptions;
  j["parameters"] = r.parameters;
  return j;
}

StabilityReport report_from_json(const nlohmann::json& j) {
  StabilityReport r;
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.route = route_from_string(j.at("route").get<std::string>());
  r.dim_check = j.at("dim_check").get<int>();
  for (const auto& [k, v] : j.at("block_spectra").items())
    r.block_spectra[k] = v.get<std::vector<double>>();
  for (const auto& [k, v] : j.at("residuals").items()) r.residuals[k] = v.get<double>();
  r.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  r.parameters = j.at("parameters");
  return r;
}

}  // namespace remstab
