#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhfs {

enum class ErrorCode {
  DuplicateFrequency,
  QuadratureNoConvergence,
  PeriodicTerm,
  InsufficientData,
  DegenerateWeights,
  PoleHit,
  AllWeightsPruned,
  ComplexPole,
  WrongPoleCount,
  KernelNotOneDimensional,
  InvalidTriple,
  PeriodicPole,
  ZeroFrequency,
  MissingC0,
  TermCountMismatch,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// True for codes caused by malformed or insufficient input rather than by the
// numerics of a well-posed problem.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nhfs
