#pragma once

#include <string>
#include <vector>

namespace caustica {

struct InvariantCheck {
  std::string name;
  double value = 0.0;      // worst residual seen
  double threshold = 0.0;  // pass iff value <= threshold
  bool pass() const { return value <= threshold; }
};

/// Suites: "radial", "beam", "evolved-beam", "bridge". Sample points are
/// drawn from a fixed-seed generator, so reports are reproducible.
std::vector<InvariantCheck> invariant_suite(const std::string& name);
std::vector<std::string> invariant_suite_names();

}  // namespace caustica
