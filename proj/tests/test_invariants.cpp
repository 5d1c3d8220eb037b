#include "caustica/invariants.hpp"
#include "doctest.h"

using namespace caustica;

TEST_CASE("every invariant suite holds") {
  for (const std::string& name : invariant_suite_names()) {
    CAPTURE(name);
    const auto checks = invariant_suite(name);
    CHECK_FALSE(checks.empty());
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CAPTURE(c.value);
      CHECK(c.pass());
    }
  }
}

TEST_CASE("suites are reproducible") {
  const auto a = invariant_suite("beam");
  const auto b = invariant_suite("beam");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].value == b[i].value);
}
