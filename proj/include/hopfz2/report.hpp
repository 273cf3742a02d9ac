#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace hopfz2 {

struct Check {
  std::string name;
  bool passed = true;
  std::string witness;  // first counterexample, empty when passed
};

// Ordered list of named checks. A check that never fails stays recorded as passed.
class Report {
 public:
  Report() = default;
  explicit Report(std::string subject) : subject_(std::move(subject)) {}

  void pass(const std::string& name) { entry(name); }
  void fail(const std::string& name, const std::string& witness) {
    Check& c = entry(name);
    if (c.passed) {
      c.passed = false;
      c.witness = witness;
    }
  }
  void record(const std::string& name, bool ok, const std::string& witness) {
    if (ok)
      pass(name);
    else
      fail(name, witness);
  }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& c : other.checks_) record(prefix + c.name, c.passed, c.witness);
  }

  bool ok() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
  }
  bool passed(const std::string& name) const {
    const Check* c = find(name);
    return c && c->passed;
  }
  bool failed(const std::string& name) const {
    const Check* c = find(name);
    return c && !c->passed;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }
  const Check* first_failure() const {
    for (const auto& c : checks_)
      if (!c.passed) return &c;
    return nullptr;
  }
  const std::vector<Check>& checks() const { return checks_; }
  const std::string& subject() const { return subject_; }

  std::string str() const {
    std::string s;
    if (!subject_.empty()) s += subject_ + "\n";
    for (const auto& c : checks_) {
      s += c.passed ? "  PASS " : "  FAIL ";
      s += c.name;
      if (!c.passed) s += ": " + c.witness;
      s += "\n";
    }
    return s;
  }

 private:
  Check& entry(const std::string& name) {
    for (auto& c : checks_)
      if (c.name == name) return c;
    checks_.push_back({name, true, {}});
    return checks_.back();
  }

  std::string subject_;
  std::vector<Check> checks_;
};

}  // namespace hopfz2
