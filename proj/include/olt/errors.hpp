#pragma once

#include <stdexcept>
#include <string>

namespace olt {

/// Argument outside the domain an operation accepts (bad index, wrong size,
/// duplicate elements, zero vector where a projective point is expected).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed: a labeled edge that does not map
/// its source to its target, an eligibility oracle that is not invariant, ...
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured enumeration budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lagrangian on the wrong component of the orthogonal Grassmannian.
class ComponentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spinor that does not lie on the spinor variety.
class PurityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A verification pass found a counterexample.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace olt
