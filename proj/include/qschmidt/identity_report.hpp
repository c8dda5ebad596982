#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qschmidt/bigmath.hpp"

namespace qschmidt {

// Outcome of one exact identity check. lhs/rhs are kept only on failure.
struct IdentityReport {
  std::string identity;
  std::vector<std::pair<std::string, long long>> params;
  bool holds = false;
  std::optional<LaurentPoly> lhs;
  std::optional<LaurentPoly> rhs;

  explicit operator bool() const noexcept { return holds; }

  std::string param_string() const {
    std::string out;
    for (const auto& [name, value] : params) {
      if (!out.empty()) out += ", ";
      out += name + "=" + std::to_string(value);
    }
    return out;
  }
};

inline IdentityReport make_report(std::string identity,
                                  std::vector<std::pair<std::string, long long>> params,
                                  LaurentPoly lhs, LaurentPoly rhs) {
  IdentityReport report{std::move(identity), std::move(params), lhs == rhs, {}, {}};
  if (!report.holds) {
    report.lhs = std::move(lhs);
    report.rhs = std::move(rhs);
  }
  return report;
}

inline void to_json(nlohmann::json& j, const IdentityReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  j = nlohmann::json{{"identity", r.identity}, {"params", std::move(params)}, {"holds", r.holds}};
  if (r.lhs) j["lhs"] = *r.lhs;
  if (r.rhs) j["rhs"] = *r.rhs;
}

}  // namespace qschmidt
