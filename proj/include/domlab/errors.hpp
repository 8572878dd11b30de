#pragma once

#include <stdexcept>

namespace domlab {

struct InvalidScale : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidFactor : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateDelta : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MethodDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MixedDomain : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProbabilitySum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace domlab
