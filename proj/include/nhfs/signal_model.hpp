#pragma once

#include <vector>

namespace nhfs {

enum class TermKind { Trig, Hyperbolic };

/// One atom of the sparse sum.
///
/// Trig:       gamma * cos(2*pi*freq*t + phase), phase in [0, 2*pi)
/// Hyperbolic: gamma * cosh(2*pi*freq*t + phase), phase unrestricted
struct CosineTerm {
  double gamma = 1.0;
  double freq = 1.0;
  double phase = 0.0;
  TermKind kind = TermKind::Trig;

  friend bool operator==(const CosineTerm&, const CosineTerm&) = default;
};

struct SignalModel {
  std::vector<CosineTerm> terms;
  double constant = 0.0;

  friend bool operator==(const SignalModel&, const SignalModel&) = default;
};

/// Relative tolerance under which two frequencies of the same kind are
/// considered equal.
inline constexpr double kFrequencyTolerance = 1e-12;

/// Sorts terms (Trig ascending by freq, then Hyperbolic ascending by freq),
/// reduces Trig phases into [0, 2*pi) and rejects repeated (kind, freq).
/// Throws Error(DuplicateFrequency).
SignalModel canonicalize(std::vector<CosineTerm> terms, double constant);

/// Time-domain value of the sum at t.
double evaluate(const SignalModel& model, double t);

/// Reduces an angle into [0, 2*pi).
double wrap_phase(double phase);

}  // namespace nhfs
