#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace sptk {

/// One named condition with the residual that decided it.
struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

/// Ordered list of named checks; passes iff every check passes.
class Report {
 public:
  void add(std::string name, double residual, double tolerance) {
    checks_.push_back({std::move(name), residual <= tolerance, residual, tolerance});
  }

  void add_flag(std::string name, bool pass, double residual = 0.0, double tolerance = 0.0) {
    checks_.push_back({std::move(name), pass, residual, tolerance});
  }

  void append(const Report& other, std::string_view prefix = {}) {
    for (const auto& c : other.checks_) {
      checks_.push_back({std::string(prefix) + c.name, c.pass, c.residual, c.tolerance});
    }
  }

  bool pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }

  const Check* find(std::string_view name) const {
    auto it = std::find_if(checks_.begin(), checks_.end(),
                           [&](const Check& c) { return c.name == name; });
    return it == checks_.end() ? nullptr : &*it;
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks_) {
      if (!c.pass) out.push_back(c.name);
    }
    return out;
  }

  const std::vector<Check>& checks() const { return checks_; }

 private:
  std::vector<Check> checks_;
};

}  // namespace sptk
