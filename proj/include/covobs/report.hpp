#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace covobs {

/// One verified axiom: name, outcome, and the worst violation magnitude
/// encountered while checking it.
struct AxiomCheck {
  std::string axiom;
  bool pass = false;
  double worst_violation = 0.0;
};

struct Report {
  std::vector<AxiomCheck> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.pass; });
  }

  const AxiomCheck* find(std::string_view axiom) const {
    for (const auto& c : checks)
      if (c.axiom == axiom) return &c;
    return nullptr;
  }

  void add(std::string axiom, double worst, double tol) {
    checks.push_back({std::move(axiom), worst <= tol, worst});
  }

  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace covobs
