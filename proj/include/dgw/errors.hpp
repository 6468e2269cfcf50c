#pragma once

#include <stdexcept>
#include <string>

namespace dgw {

/// Malformed input or incompatible shapes. Maps to exit code 2.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An axiom failed on otherwise well-formed data. Carries a witness
/// (the failing degree, basis tuple or vector) in human-readable form.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::string witness)
      : std::runtime_error(what + " [witness: " + witness + "]"),
        witness_(std::move(witness)) {}

  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace dgw
