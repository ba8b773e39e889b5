#pragma once

#include <stdexcept>
#include <string>

namespace qgrass {

/// Base of every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary operation between values built over different roots of unity.
class LevelMismatch : public Error {
 public:
  LevelMismatch(int a, int b)
      : Error("level mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// An exchange between two generators (or a generator and a dyad) that no
/// relation of the algebra covers. Raised instead of guessing a phase.
class UnspecifiedRelation : public Error {
 public:
  using Error::Error;
};

/// Contraction needing <psi_i|psi_j> or <phi_i|phi_j>, which is unknown
/// without a concrete matrix realization.
class GramUnknown : public Error {
 public:
  using Error::Error;
};

/// Product of dyads with no meaning, e.g. ket times ket.
class IllFormedProduct : public Error {
 public:
  using Error::Error;
};

class NonTerminatingSeries : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgrass
