#pragma once

#include <stdexcept>
#include <string>

namespace mtuple {

/// Invalid argument supplied by the caller (bad dimension, order, axis, shape...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data carries no usable information (empty cloud, zero mass, all
/// points at the origin, blank image).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested quantity is not observable from the data, typically because
/// a symmetry of the object makes the transformation ambiguous.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called on an object in the wrong state (e.g. asking for a plane
/// normal from a report that was not classified planar).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed or inconsistent file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tuple derivation requested for a basis of even total degree.
class EvenDegreeError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace mtuple
