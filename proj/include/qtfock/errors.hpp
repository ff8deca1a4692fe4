#pragma once

#include <stdexcept>
#include <string>

namespace qtfock {

// Base class for all computational errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Division by an exactly-zero rational function.
struct DivByZero : Error {
  explicit DivByZero(const std::string& msg) : Error(msg) {}
};

// A specialization assignment made a denominator vanish.
struct PoleAtPoint : Error {
  explicit PoleAtPoint(const std::string& msg) : Error(msg) {}
};

// A computation walked past its configured degree window.
struct DegreeCapExceeded : Error {
  explicit DegreeCapExceeded(const std::string& msg) : Error(msg) {}
};

// Two spectral parameters collided (only possible under specialization).
struct EigenvalueCollision : Error {
  explicit EigenvalueCollision(const std::string& msg) : Error(msg) {}
};

// The ladder-operator family failed to span a weight slice.
struct PBWRankDefect : Error {
  explicit PBWRankDefect(const std::string& msg) : Error(msg) {}
};

// A linear system that should be solvable turned out contradictory.
struct InconsistentSystem : Error {
  explicit InconsistentSystem(const std::string& msg) : Error(msg) {}
};

// A slot or ladder index outside the declared tensor range.
struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

}  // namespace qtfock
