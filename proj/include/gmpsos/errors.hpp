#pragma once

#include <stdexcept>
#include <string>

namespace gmpsos {

// Mismatched variable counts or vector lengths.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation undefined on the zero polynomial.
class EmptyPolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Degree exceeds the truncation the operation was built for.
class DegreeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed instance, problem file or tensor/state input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The standing assumptions of an instance do not hold.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmpsos
