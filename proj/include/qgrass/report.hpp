#pragma once

// Verification reports: one entry per check, serialized as text or JSON.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qgrass {

enum class Status { Pass, Fail, ReportedDiscrepancy };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::ReportedDiscrepancy: return "reported-discrepancy";
  }
  return "fail";
}

struct Check {
  std::string id;
  std::string relation;  // the identity being checked, in plain text
  Status status = Status::Fail;
  std::string defect;    // canonical symbolic form or a residual
  double runtime_ms = 0.0;
};

struct SuiteReport {
  std::vector<Check> checks;

  bool any_fail() const {
    for (const auto& c : checks)
      if (c.status == Status::Fail) return true;
    return false;
  }
  std::size_t count(Status s) const {
    std::size_t k = 0;
    for (const auto& c : checks) k += c.status == s;
    return k;
  }
};

/// Residual in fixed scientific notation, so reports diff cleanly.
inline std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

enum class ReportFormat { Text, Json };

inline std::string emit_report(const SuiteReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
      nlohmann::ordered_json j;
      j["id"] = c.id;
      j["relation"] = c.relation;
      j["status"] = status_name(c.status);
      j["defect"] = c.defect;
      j["runtime_ms"] = c.runtime_ms;
      checks.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["checks"] = std::move(checks);
    return out.dump() + "\n";
  }
  std::string out;
  for (const auto& c : r.checks) {
    out += c.id + "  " + status_name(c.status) + "  " + c.relation;
    if (c.status != Status::Pass || c.defect != "0") out += "  defect: " + c.defect;
    out += "\n";
  }
  out += "summary: " + std::to_string(r.count(Status::Pass)) + " pass, " + std::to_string(r.count(Status::Fail)) +
         " fail, " + std::to_string(r.count(Status::ReportedDiscrepancy)) + " reported-discrepancy\n";
  return out;
}

}  // namespace qgrass
