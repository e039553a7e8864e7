#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "nhfs/signal_model.hpp"

namespace nhfs {

using Complex = std::complex<double>;

struct Coefficient {
  int n = 0;
  Complex value;
};

/// Classical Fourier coefficients c_n = (1/P) int_0^P f(t) e^{-2 pi i n t / P} dt
/// on positive indices, plus the optional index-0 coefficient.
struct FourierData {
  double period = 1.0;
  std::vector<Coefficient> entries;  // n >= 1, pairwise distinct
  std::optional<Complex> c0;
};

/// Re c_n + (i/n) Im c_n on positive indices.
struct ModifiedCoefficients {
  double period = 1.0;
  std::vector<Coefficient> entries;
};

/// c_n(term) = (A + iBn) / (n^2 - C) for every non-periodic term.
struct AbcTriple {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

/// Distance of a*P from the nearest positive integer below which a Trig term
/// is treated as exactly P-periodic.
inline constexpr double kPeriodicTolerance = 1e-8;

/// Returns the integer m >= 1 with |freq*P - m| < kPeriodicTolerance, or 0.
int periodic_index(const CosineTerm& term, double period);

Complex coefficient_closed_form(const CosineTerm& term, double period, int n);

/// Throws std::invalid_argument on repeated or negative indices. Index 0 goes
/// to FourierData::c0 and carries the constant.
FourierData coefficients(const SignalModel& model, double period, std::span<const int> indices);

/// Independent oracle: adaptive Gauss-Legendre bisection of the defining
/// integral. Throws Error(QuadratureNoConvergence) when the panel budget
/// (2^20 evaluations) runs out before the local error target is met.
Complex coefficient_quadrature(const SignalModel& model, double period, int n, double tol);

ModifiedCoefficients modify(const FourierData& data);
FourierData unmodify(const ModifiedCoefficients& mc);

/// Throws Error(PeriodicTerm) for Trig terms with freq*P integral.
AbcTriple forward_abc(const CosineTerm& term, double period);

}  // namespace nhfs
