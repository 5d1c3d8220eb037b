#pragma once

#include <stdexcept>
#include <string>

namespace caustica {

/// Base of every numerical contract failure raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed user input (configs, chart specs). The CLI maps it to exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config: " + what) {}
};

#define CAUSTICA_DEFINE_ERROR(Name, prefix)                              \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(prefix ": " + what) {} \
  };

// manifold_geometry
CAUSTICA_DEFINE_ERROR(DomainError, "domain")
CAUSTICA_DEFINE_ERROR(InvalidMeasureError, "invalid measure")
CAUSTICA_DEFINE_ERROR(ConditionViolatedError, "condition violated")

// maslov_index
CAUSTICA_DEFINE_ERROR(RegularizationNeededError, "regularization needed")
CAUSTICA_DEFINE_ERROR(NonConvergenceError, "nonconvergence")
CAUSTICA_DEFINE_ERROR(InvalidEndpointError, "invalid endpoint")
CAUSTICA_DEFINE_ERROR(InconsistencyError, "inconsistent index")
CAUSTICA_DEFINE_ERROR(NumericalBranchError, "numerical branch")
CAUSTICA_DEFINE_ERROR(DegenerateChartError, "degenerate chart")
CAUSTICA_DEFINE_ERROR(DegenerateSignatureError, "degenerate signature")

// canonical_operator
CAUSTICA_DEFINE_ERROR(OutsideChartError, "outside chart")
CAUSTICA_DEFINE_ERROR(LeavingWError, "leaving W")
CAUSTICA_DEFINE_ERROR(DegenerateMError, "degenerate M")
CAUSTICA_DEFINE_ERROR(NearCausticError, "near caustic")
CAUSTICA_DEFINE_ERROR(CoordinateChartError, "coordinate chart")
CAUSTICA_DEFINE_ERROR(CoverageError, "coverage")
CAUSTICA_DEFINE_ERROR(NotACycleError, "not a cycle")

// oscillatory
CAUSTICA_DEFINE_ERROR(AccuracyError, "accuracy")
CAUSTICA_DEFINE_ERROR(FoldError, "fold")

// fourier_bridge
CAUSTICA_DEFINE_ERROR(PreconditionError, "precondition")
CAUSTICA_DEFINE_ERROR(InconsistentMeasureError, "inconsistent measure")

// examples
CAUSTICA_DEFINE_ERROR(ProfileError, "profile")
CAUSTICA_DEFINE_ERROR(CausticOnsetError, "caustic onset")
CAUSTICA_DEFINE_ERROR(SingularOracleError, "singular oracle")

#undef CAUSTICA_DEFINE_ERROR

}  // namespace caustica
