#pragma once

#include <stdexcept>
#include <string>

namespace octograv {

/// Operands belong to different algebras (quaternionic vs octonionic).
class IncompatibleAlgebras : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structure constant could not be read off the multiplication table.
class ExtractionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An asserted identity between tables did not hold.
class IdentityFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frame determinant below the degeneracy threshold.
class DegenerateFrame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metric without Lorentzian signature (-g <= 0).
class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-facing input (unknown table, mismatched scenario/form, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace octograv
