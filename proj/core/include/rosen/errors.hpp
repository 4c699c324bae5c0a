#pragma once

#include <stdexcept>
#include <string>

namespace rosen {

/// Base of every error raised by the library.
class RosenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public RosenError {
 public:
  using RosenError::RosenError;
};

/// The orbit reached 0 (within the zero threshold): the input is a G_q-rational.
class GqRationalTermination : public RosenError {
 public:
  using RosenError::RosenError;
};

/// A digit could not be decided because eps/(lambda x) + 1/2 sits within the
/// zero threshold of an integer.
class BoundaryAmbiguity : public RosenError {
 public:
  BoundaryAmbiguity(const std::string& what, long step) : RosenError(what), step_(step) {}
  /// Index of the digit being extracted (0-based), or -1 for a single step.
  long step() const { return step_; }

 private:
  long step_;
};

class IllFormedExpansion : public RosenError {
 public:
  using RosenError::RosenError;
};

/// 1 + t v <= 0: the point cannot come from an orbit.
class OutsideDomain : public RosenError {
 public:
  using RosenError::RosenError;
};

class NoPreimage : public RosenError {
 public:
  using RosenError::RosenError;
};

class AmbiguousPreimage : public RosenError {
 public:
  using RosenError::RosenError;
};

class DomainConstructionFailure : public RosenError {
 public:
  using RosenError::RosenError;
};

class IntegrationFailure : public RosenError {
 public:
  using RosenError::RosenError;
};

class OutsideOmega : public RosenError {
 public:
  using RosenError::RosenError;
};

class FixedPointFailure : public RosenError {
 public:
  using RosenError::RosenError;
};

}  // namespace rosen
