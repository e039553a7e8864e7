#include "nhfs/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nhfs/error.hpp"

namespace nhfs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateFrequency: return "DuplicateFrequency";
    case ErrorCode::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorCode::PeriodicTerm: return "PeriodicTerm";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::AllWeightsPruned: return "AllWeightsPruned";
    case ErrorCode::ComplexPole: return "ComplexPole";
    case ErrorCode::WrongPoleCount: return "WrongPoleCount";
    case ErrorCode::KernelNotOneDimensional: return "KernelNotOneDimensional";
    case ErrorCode::InvalidTriple: return "InvalidTriple";
    case ErrorCode::PeriodicPole: return "PeriodicPole";
    case ErrorCode::ZeroFrequency: return "ZeroFrequency";
    case ErrorCode::MissingC0: return "MissingC0";
    case ErrorCode::TermCountMismatch: return "TermCountMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InsufficientData:
    case ErrorCode::DuplicateFrequency:
    case ErrorCode::MissingC0:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phase, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod of a tiny negative number can round back up to exactly 2*pi
  if (r >= two_pi) r = 0.0;
  return r;
}

SignalModel canonicalize(std::vector<CosineTerm> terms, double constant) {
  for (auto& t : terms) {
    if (t.kind == TermKind::Trig) t.phase = wrap_phase(t.phase);
  }
  std::sort(terms.begin(), terms.end(), [](const CosineTerm& a, const CosineTerm& b) {
    if (a.kind != b.kind) return a.kind == TermKind::Trig;
    return a.freq < b.freq;
  });
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const auto& prev = terms[i - 1];
    const auto& cur = terms[i];
    if (prev.kind != cur.kind) continue;
    const double scale = std::max(std::abs(prev.freq), std::abs(cur.freq));
    if (std::abs(cur.freq - prev.freq) <= kFrequencyTolerance * scale) {
      std::ostringstream os;
      os << "frequency " << cur.freq << " appears twice";
      throw Error(ErrorCode::DuplicateFrequency, os.str());
    }
  }
  return SignalModel{std::move(terms), constant};
}

double evaluate(const SignalModel& model, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double sum = model.constant;
  for (const auto& term : model.terms) {
    const double arg = two_pi * term.freq * t + term.phase;
    sum += term.gamma * (term.kind == TermKind::Trig ? std::cos(arg) : std::cosh(arg));
  }
  return sum;
}

}  // namespace nhfs
