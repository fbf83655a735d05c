#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace minflow {

// Named pass/fail record. `cases` is how many instances of the law were
// examined; `witness` describes the first counterexample.
struct Check {
  std::string name;
  bool pass = false;
  std::size_t cases = 0;
  std::string witness;
};

class VerificationReport {
 public:
  void add(std::string name, bool pass, std::size_t cases, std::string witness = {}) {
    checks_.push_back({std::move(name), pass, cases, std::move(witness)});
  }
  void append(const VerificationReport& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.pass, c.cases, c.witness});
  }

  bool passed() const noexcept {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const Check* find(const std::string& name) const noexcept {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }
  const Check* first_failure() const noexcept {
    for (const auto& c : checks_)
      if (!c.pass) return &c;
    return nullptr;
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace minflow
