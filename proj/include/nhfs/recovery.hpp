#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nhfs/aaa.hpp"
#include "nhfs/error.hpp"
#include "nhfs/fourier.hpp"
#include "nhfs/partial_fractions.hpp"
#include "nhfs/signal_model.hpp"

namespace nhfs {

inline constexpr double kDefaultPeriodicEps = 1e-6;

struct ReconstructionConfig {
  double tol = kDefaultTol;
  int mmax = 0;  // 0: default_mmax(L)
  double weight_eps = kDefaultWeightEps;
  double residue_eps = kDefaultResidueEps;
  double periodic_eps = kDefaultPeriodicEps;
  double imag_eps = kDefaultImagEps;
  bool refine = true;  // least-squares polish of the partial fraction on all data
};

struct ReconstructionReport {
  SignalModel model;
  std::vector<int> periodic_indices;  // Sigma, ascending
  std::vector<int> pruned_indices;    // support points dropped for vanishing weight
  AaaDiagnostics aaa;
  int froissart_removed = 0;
  double residual_max = 0.0;  // max over given n of |c_n(model) - c_n(data)|
  std::vector<std::string> warnings;
};

/// Pipeline failure after the rational fit started; carries what was computed.
class ReconstructionError : public Error {
 public:
  ReconstructionError(const Error& cause, AaaDiagnostics aaa, std::vector<std::string> warnings)
      : Error(cause), aaa_(std::move(aaa)), warnings_(std::move(warnings)) {}
  const AaaDiagnostics& aaa() const noexcept { return aaa_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  AaaDiagnostics aaa_;
  std::vector<std::string> warnings_;
};

/// Maps (A, B, C) back to (gamma, freq, phase). C > 0 gives a Trig term,
/// C < 0 a Hyperbolic one.
/// Throws Error(ZeroFrequency) for |C| < 1e-10, Error(PeriodicPole) when
/// sqrt(C) is within 1e-8 of an integer, Error(InvalidTriple) when
/// A^2 + C B^2 <= 0 (or A <= 0 for C < 0).
CosineTerm invert_parameters(const AbcTriple& abc, double period);

/// Indices where the data departs from the rational part by more than
/// periodic_eps * max(1, max|c~|), turned into P-periodic Trig terms.
std::pair<std::vector<CosineTerm>, std::vector<int>> extract_periodic(
    const FourierData& data, const BarycentricRational& r,
    double periodic_eps = kDefaultPeriodicEps);

/// Same, with the non-periodic part given in partial-fraction form.
std::pair<std::vector<CosineTerm>, std::vector<int>> extract_periodic(
    const FourierData& data, const PartialFraction& pf, double periodic_eps = kDefaultPeriodicEps);

/// gamma_0 = Re c_0 minus the non-periodic part at n = 0.
/// Throws Error(MissingC0).
double extract_constant(const FourierData& data, const PartialFraction& pf);

ReconstructionReport reconstruct(const FourierData& data, const ReconstructionConfig& config = {});

struct BatchResult {
  std::optional<ReconstructionReport> report;
  std::optional<ErrorCode> error;
  std::string message;
};

/// Independent datasets reconstructed in an OpenMP loop.
std::vector<BatchResult> reconstruct_many(std::span<const FourierData> datasets,
                                          const ReconstructionConfig& config = {});
std::vector<BatchResult> reconstruct_many_serial(std::span<const FourierData> datasets,
                                                 const ReconstructionConfig& config = {});

struct TermMatch {
  CosineTerm reference;
  std::optional<CosineTerm> estimate;
  double freq_error = 0.0;
  double phase_error = 0.0;
  double gamma_error = 0.0;
};

struct ModelComparison {
  std::vector<TermMatch> rows;
  double max_freq_error = 0.0;
  double max_phase_error = 0.0;  // mod 2*pi distance for Trig terms
  double max_gamma_error = 0.0;
  double constant_error = 0.0;
  bool term_count_mismatch = false;
};

/// Matches every reference term with the nearest-frequency estimate term of
/// the same kind and reports sup-norm parameter errors.
ModelComparison compare_models(const SignalModel& reference, const SignalModel& estimate);

/// Distance of two angles on the circle.
double phase_distance(double a, double b);

}  // namespace nhfs
