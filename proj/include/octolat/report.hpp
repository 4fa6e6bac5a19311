#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "octolat/stokes.hpp"
#include "octolat/weyl.hpp"

namespace octolat {

using Json = nlohmann::ordered_json;

constexpr int kReportSchema = 1;

/// One verified identity instance. `seed < 0` marks a check that is
/// exhaustive rather than seeded; `duration_ms < 0` suppresses the field so
/// untimed reports are byte-identical across runs.
struct CheckRow {
  std::string check;
  std::string region;
  std::string interpretation;
  double residual = 0.0;
  bool pass = false;
  long seed = -1;
  double h = 1.0;
  int support = 0;
  double duration_ms = -1.0;
  std::string note;
};

inline Json check_json(const CheckRow& row) {
  Json j;
  j["check"] = row.check;
  if (!row.region.empty()) j["region"] = row.region;
  if (!row.interpretation.empty()) j["interpretation"] = row.interpretation;
  j["residual"] = row.residual;
  j["pass"] = row.pass;
  if (row.seed >= 0) j["seed"] = row.seed;
  j["h"] = row.h;
  j["support"] = row.support;
  if (row.duration_ms >= 0.0) j["duration_ms"] = row.duration_ms;
  if (!row.note.empty()) j["note"] = row.note;
  return j;
}

/// A suite run: config echo, per-check rows, and the overall verdict.
struct SuiteResult {
  std::string suite;
  Json config;
  std::vector<CheckRow> rows;
  std::vector<std::string> notes;

  bool pass() const {
    for (const CheckRow& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

inline Json suite_json(const SuiteResult& s) {
  Json j;
  j["schema"] = kReportSchema;
  j["suite"] = s.suite;
  j["config"] = s.config;
  Json checks = Json::array();
  for (const CheckRow& r : s.rows) checks.push_back(check_json(r));
  j["checks"] = std::move(checks);
  if (!s.notes.empty()) j["notes"] = s.notes;
  j["pass"] = s.pass();
  return j;
}

inline void print_suite(std::ostream& os, const SuiteResult& s) {
  os << "suite " << s.suite << "\n";
  for (const CheckRow& r : s.rows) {
    os << (r.pass ? "  ok   " : "  FAIL ") << r.check;
    if (!r.region.empty()) os << " [" << r.region << "]";
    if (!r.interpretation.empty()) os << " {" << r.interpretation << "}";
    if (r.seed >= 0) os << " seed=" << r.seed;
    os << " residual=" << r.residual;
    if (r.duration_ms >= 0.0) os << " (" << r.duration_ms << " ms)";
    if (!r.note.empty()) os << "  # " << r.note;
    os << "\n";
  }
  for (const std::string& n : s.notes) os << "  note: " << n << "\n";
  os << (s.pass() ? "PASS" : "FAIL") << " (" << s.rows.size() << " checks)\n";
}

/// Four-way half-space comparison in wire form. The octonion-first reading is
/// reported alongside the others; its mismatch is a finding, not a failure.
inline Json half_space_json(const HalfSpaceComparison& cmp, long seed, double h,
                            int support) {
  Json j;
  j["schema"] = kReportSchema;
  j["check"] = "half-space";
  j["region"] = cmp.side == HalfSide::upper ? "upper" : "lower";
  j["base_layer"] = cmp.base_layer;
  j["seed"] = seed;
  j["h"] = h;
  j["support"] = support;
  j["lhs"] = render(cmp.lhs);
  j["telescope"] = render(cmp.telescope);
  j["rhs_i1"] = render(cmp.rhs_octonion_first);
  j["rhs_i2"] = render(cmp.rhs_slot_preserving);
  Json res;
  res["lhs_vs_telescope"] = cmp.lhs_vs_telescope();
  res["lhs_vs_i1"] = cmp.lhs_vs_rhs(BoundaryInterpretation::octonion_first);
  res["lhs_vs_i2"] = cmp.lhs_vs_rhs(BoundaryInterpretation::slot_preserving);
  j["residuals"] = std::move(res);
  const bool i1 =
      cmp.lhs_vs_rhs(BoundaryInterpretation::octonion_first) == 0.0;
  const bool i2 =
      cmp.lhs_vs_rhs(BoundaryInterpretation::slot_preserving) == 0.0;
  j["matched_interpretation"] = i1 && i2  ? "both"
                                : i2      ? "slot-preserving"
                                : i1      ? "octonion-first"
                                          : "none";
  j["pass"] = cmp.lhs_vs_telescope() == 0.0;
  return j;
}

}  // namespace octolat
