#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fplap/core/format.hpp"

namespace fplap {

using json = nlohmann::ordered_json;

/// One measured check: pass is comparison of measured against threshold,
/// nothing else.  claim names the mathematical statement being instantiated
/// ("plumbing" for harness-internal checks).  Vacuous assertions belong to
/// suites whose hypotheses failed numerically; they are excluded from
/// pass/fail aggregation but stay visible in reports.
struct Assertion {
  std::string label;
  std::string claim;
  double measured = 0.0;
  double threshold = 0.0;
  std::string cmp = "<=";
  bool pass = false;
  bool vacuous = false;

  static Assertion le(std::string label, std::string claim, double measured, double threshold) {
    return {std::move(label), std::move(claim), measured, threshold, "<=", measured <= threshold,
            false};
  }
  static Assertion ge(std::string label, std::string claim, double measured, double threshold) {
    return {std::move(label), std::move(claim), measured, threshold, ">=", measured >= threshold,
            false};
  }
  static Assertion gt(std::string label, std::string claim, double measured, double threshold) {
    return {std::move(label), std::move(claim), measured, threshold, ">", measured > threshold,
            false};
  }

  json to_json() const {
    json j;
    j["label"] = label;
    j["claim"] = claim;
    j["measured"] = measured;
    j["threshold"] = threshold;
    j["cmp"] = cmp;
    j["pass"] = pass;
    if (vacuous) j["vacuous"] = true;
    return j;
  }
};

struct SuiteReport {
  std::string suite;
  json hypotheses = json::object();
  std::vector<Assertion> assertions;
  std::vector<std::string> artifacts;
  std::uint64_t seed = 0;
  std::string config_hash;
  bool hypotheses_ok = true;
  std::string vacuous_reason;

  void mark_vacuous(const std::string& reason) {
    hypotheses_ok = false;
    vacuous_reason = reason;
    for (auto& a : assertions) a.vacuous = true;
  }

  void add(Assertion a) {
    if (!hypotheses_ok) a.vacuous = true;
    assertions.push_back(std::move(a));
  }

  /// A vacuous suite never fails; a live one fails on any failed assertion.
  bool failed() const {
    if (!hypotheses_ok) return false;
    for (const auto& a : assertions) {
      if (!a.vacuous && !a.pass) return true;
    }
    return false;
  }
  bool passed() const { return !failed(); }
  bool vacuous() const { return !hypotheses_ok; }

  json to_json() const {
    json j;
    j["suite"] = suite;
    j["hypotheses"] = hypotheses;
    j["vacuous"] = vacuous();
    if (!vacuous_reason.empty()) j["vacuous_reason"] = vacuous_reason;
    j["pass"] = passed();
    json arr = json::array();
    for (const auto& a : assertions) arr.push_back(a.to_json());
    j["assertions"] = arr;
    j["artifacts"] = artifacts;
    j["seed"] = seed;
    if (!config_hash.empty()) j["config_hash"] = config_hash;
    return j;
  }
};

struct AggregateReport {
  std::vector<SuiteReport> suites;
  std::uint64_t seed = 0;
  std::string config_hash;

  bool all_passed() const {
    for (const auto& s : suites) {
      if (s.failed()) return false;
    }
    return true;
  }

  json to_json() const {
    json j;
    j["pass"] = all_passed();
    j["seed"] = seed;
    j["config_hash"] = config_hash;
    json arr = json::array();
    for (const auto& s : suites) arr.push_back(s.to_json());
    j["suites"] = arr;
    return j;
  }
};

}  // namespace fplap
