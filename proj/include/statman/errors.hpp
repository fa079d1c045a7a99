#pragma once

#include <stdexcept>
#include <string>

namespace statman {

/// Malformed or inconsistent input (mismatched parameter lists, singular
/// metric, wrong dimensions). The CLI maps these to a nonzero exit status.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter needed for evaluation is missing from the assignment.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate geometric input, e.g. a 2-plane spanned by parallel vectors or
/// a numerical sample too close to the chart boundary.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The tangent subframe of a submanifold is not closed under brackets.
class ClosureError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

}  // namespace statman
