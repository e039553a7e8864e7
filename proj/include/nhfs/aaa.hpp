#pragma once

#include <utility>
#include <vector>

#include "nhfs/fourier.hpp"

namespace nhfs {

/// r(z) = sum_j w_j v_j / (z - n_j^2)  /  sum_j w_j / (z - n_j^2)
///
/// with support pairs (n_j, v_j). Weights are kept at unit 2-norm and obey the
/// bilinear side condition sum_j w_j v_j = 0, which lowers the numerator degree
/// by one so that r has type (m-2, m-1) for m support points.
struct BarycentricRational {
  std::vector<Coefficient> support;
  std::vector<Complex> weights;
};

struct AaaDiagnostics {
  int iterations = 0;  // main-loop passes after initialization
  std::vector<int> selection_order;
  double final_residual = 0.0;  // max |r(n^2) - c_n| over non-support indices
  bool converged = false;
};

inline constexpr double kDefaultTol = 1e-13;
inline constexpr double kDefaultWeightEps = 1e-8;

/// Largest support size that still leaves a least-squares row and allows
/// the K + 2 support points needed when P-periodic terms are present.
int default_mmax(int entry_count);

/// Throws Error(PoleHit) when the denominator vanishes away from the support.
Complex evaluate_barycentric(const BarycentricRational& r, Complex z);

/// Residual |r(n^2) - c_n| at each entry (+inf where r has a pole).
std::vector<double> residuals(const BarycentricRational& r, std::span<const Coefficient> entries);

// How v^T c_S is formed when combining the two smallest singular vectors.
// Bilinear keeps w^T c_S = 0 exactly. Conjugated (v^H c_S) does not, but it
// selects the same points as a conjugate-transpose (MATLAB ') implementation.
enum class WeightProduct { Bilinear, Conjugated };

struct AaaState {
  BarycentricRational rational;
  std::vector<Coefficient> remaining;  // ascending by index
};

/// Two largest |c| (ties: smaller index first) with the closed-form type (0,1)
/// weights. Throws Error(InsufficientData) for fewer than 3 entries.
AaaState initialize(const ModifiedCoefficients& mc);

/// One greedy step: move the worst-approximated index into the support and
/// re-solve the weights from the two smallest right singular vectors of the
/// Loewner matrix. Throws Error(InsufficientData) when no least-squares row
/// would remain, Error(DegenerateWeights) on non-finite weights.
AaaState iterate(AaaState state, WeightProduct product = WeightProduct::Bilinear);

/// Stops once every off-support residual is below tol * max(1, max|c|).
/// Throws std::invalid_argument when tol <= 0 or mmax is outside [2, L-1].
std::pair<BarycentricRational, AaaDiagnostics> run_aaa(const ModifiedCoefficients& mc,
                                                       double tol = kDefaultTol, int mmax = 0,
                                                       WeightProduct product = WeightProduct::Bilinear);

/// Drops support points with |w_j| <= weight_eps * max|w| and renormalizes.
/// Returns the pruned indices. Throws Error(AllWeightsPruned).
std::pair<BarycentricRational, std::vector<int>> prune_vanishing_weights(
    const BarycentricRational& r, double weight_eps = kDefaultWeightEps);

/// Re-solves the weights for a fixed support against every entry that is
/// neither a support point nor listed in `excluded` (typically the pruned
/// indices). After pruning this removes the rounding the discarded columns
/// left in the surviving weights.
BarycentricRational refit_weights(const BarycentricRational& r, const ModifiedCoefficients& mc,
                                  std::span<const int> excluded);

}  // namespace nhfs
