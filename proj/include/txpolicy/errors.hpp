#pragma once

#include <stdexcept>

namespace txpolicy {

// Model or config parameters violate an invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input could not be parsed (malformed JSON, wrong value types).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Table lookup outside the computed index range.
struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Quadrature could not reach the requested tolerance.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation applied to a sensor state that cannot accept it.
struct InvalidState : std::logic_error {
  using std::logic_error::logic_error;
};

// Oracle instance exceeds the enumeration bounds.
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace txpolicy
