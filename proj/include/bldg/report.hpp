#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace bldg {

using json = nlohmann::json;

enum class Verdict { pass, fail, not_applicable };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

/// Outcome of one named check over a finite verification surface. A fail
/// carries a witness that replays to a violation through the operation named
/// in it; the statistics state exactly what was checked.
struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::pass;
  json witness; // null unless fail
  long cases = 0;
  long grid_cases = 0;
  long random_cases = 0;
  std::vector<std::string> notes;

  bool ok() const { return verdict != Verdict::fail; }

  void fail_with(json w) {
    if (verdict == Verdict::fail) return; // keep the first witness
    verdict = Verdict::fail;
    witness = std::move(w);
  }

  json to_json() const {
    json j;
    j["name"] = name;
    j["verdict"] = verdict_name(verdict);
    j["witness"] = witness.is_null() ? json() : witness;
    j["cases"] = cases;
    j["grid_cases"] = grid_cases;
    j["random_cases"] = random_cases;
    j["notes"] = notes;
    return j;
  }
};

} // namespace bldg
