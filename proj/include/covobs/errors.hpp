#pragma once

#include <stdexcept>
#include <string>

namespace covobs {

/// Malformed input: bad file schema, mismatched table dimensions,
/// out-of-range indices. CLI maps this to exit code 2.
class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input that fails a mathematical precondition: a table that
/// is not a group, a POVM atom with a negative eigenvalue, non-commuting
/// convolution inputs, a deficient irrep support. CLI maps this to exit
/// code 1.
class AdmissibilityError : public std::runtime_error {
public:
  explicit AdmissibilityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace covobs
