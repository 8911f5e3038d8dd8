#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpa {

// One verification check: name, status, counterexample when failed.
struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  void add(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back(Check{name, ok, detail});
  }
  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool all_ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  // One line per check: "<name>: ok" or "<name>: FAIL <detail>".
  void print(std::ostream& os) const {
    for (const auto& c : checks) {
      os << c.name << ": " << (c.ok ? "ok" : "FAIL");
      if (!c.ok && !c.detail.empty()) os << " " << c.detail;
      os << "\n";
    }
  }
};

}  // namespace lpa
