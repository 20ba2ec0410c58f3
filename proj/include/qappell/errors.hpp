#pragma once

#include <stdexcept>
#include <string>

namespace qappell {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the supported domain (non-finite value, |x| >= 1, bad q, ...).
struct DomainError : Error {
  using Error::Error;
};

// A q-Pochhammer divisor factor (1 - z q^j) is numerically zero.
struct DegenerateDenominator : Error {
  using Error::Error;
};

// A coefficient denominator such as (1-c) or (1-q/c) is numerically zero.
struct DegenerateCoefficient : Error {
  using Error::Error;
};

// Series failed to reach the requested tolerance within the layer cap.
struct NoConvergence : Error {
  using Error::Error;
};

// Relation/theorem does not exist for the requested kind/parameter combination.
struct UnsupportedRelation : Error {
  using Error::Error;
};

// Identity ID does not resolve in the catalogs.
struct UnknownIdentity : Error {
  using Error::Error;
};

}  // namespace qappell
