#pragma once

#include <stdexcept>
#include <string>

namespace friedrichs {

// Error hierarchy shared by all modules.  Everything derives from Error so
// callers (and the CLI) can map numerical failures to a single exit path.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Argument within tolerance of a Gamma pole.
struct PoleError : DomainError {
  explicit PoleError(const std::string& msg) : DomainError(msg) {}
};

struct GridError : Error {
  explicit GridError(const std::string& msg) : Error(msg) {}
};

// Re z outside the meromorphic continuation band of the symbol.
struct BandError : Error {
  explicit BandError(const std::string& msg) : Error(msg) {}
};

struct PoleProximityError : Error {
  explicit PoleProximityError(const std::string& msg) : Error(msg) {}
};

// l on a resonant line r_n + 1/2: the threshold degenerates to zero and the
// finite counting formulas do not apply.
struct ResonanceError : Error {
  explicit ResonanceError(const std::string& msg) : Error(msg) {}
};

struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

struct BoundaryError : Error {
  explicit BoundaryError(const std::string& msg) : Error(msg) {}
};

struct ParityError : DomainError {
  explicit ParityError(const std::string& msg) : DomainError(msg) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& msg) : Error(msg) {}
};

struct SpecError : Error {
  explicit SpecError(const std::string& msg) : Error(msg) {}
};

struct OscillationError : Error {
  explicit OscillationError(const std::string& msg) : Error(msg) {}
};

struct FactorizationError : Error {
  explicit FactorizationError(const std::string& msg) : Error(msg) {}
};

}  // namespace friedrichs
