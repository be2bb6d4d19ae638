#pragma once

#include <nlohmann/json.hpp>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dgk {

using json = nlohmann::json;

// One named verification outcome. Failed checks carry a counterexample
// bundle (the instance and the offending vector) as JSON.
struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
  json counterexample;
};

// Ordered list of checks produced by a verification routine. Failures are
// recorded, never thrown.
class Evidence {
 public:
  void pass(std::string name, std::string detail = {}) {
    checks_.push_back({std::move(name), true, std::move(detail), nullptr});
  }

  void fail(std::string name, std::string detail, json counterexample = nullptr) {
    checks_.push_back({std::move(name), false, std::move(detail), std::move(counterexample)});
  }

  // The bundle is only materialized on failure.
  void record(std::string name, bool ok, std::string detail, const std::function<json()>& bundle = {}) {
    if (ok)
      pass(std::move(name), std::move(detail));
    else
      fail(std::move(name), std::move(detail), bundle ? bundle() : json(nullptr));
  }

  void merge(const Evidence& other, std::string_view prefix = {}) {
    for (const auto& c : other.checks_) {
      Check copy = c;
      if (!prefix.empty()) copy.name = std::string(prefix) + "." + copy.name;
      checks_.push_back(std::move(copy));
    }
  }

  bool ok() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }

  const std::vector<Check>& checks() const { return checks_; }

  const Check* first_failure() const {
    for (const auto& c : checks_)
      if (!c.passed) return &c;
    return nullptr;
  }

  const Check* find(std::string_view name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  json to_json() const {
    json out = json::array();
    for (const auto& c : checks_) {
      json j = {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      if (!c.passed && !c.counterexample.is_null()) j["counterexample"] = c.counterexample;
      out.push_back(std::move(j));
    }
    return out;
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace dgk
