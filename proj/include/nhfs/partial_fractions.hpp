#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nhfs/aaa.hpp"
#include "nhfs/fourier.hpp"

namespace nhfs {

/// r(z) = sum_j (A_j + i B_j) / (z - C_j)
struct PartialFraction {
  std::vector<AbcTriple> terms;
};

inline constexpr double kDefaultImagEps = 1e-8;
inline constexpr double kDefaultResidueEps = 1e-8;
inline constexpr double kIllConditioned = 1e14;

Complex evaluate_partial_fraction(const PartialFraction& pf, Complex z);

/// Finite eigenvalues of the arrowhead pencil
///
///   [0  w^T ]         [0  0]
///   [1  D   ] v = lam [0  I] v,   D = diag(n_j^2)
///
/// i.e. the zeros of the barycentric denominator. The two infinite
/// eigenvalues are filtered by non-finiteness or by magnitude above
/// 1e12 * max n_j^2. Throws Error(WrongPoleCount) unless exactly m - 1 remain.
std::vector<Complex> pole_candidates(const BarycentricRational& r);

/// Real poles sorted ascending. Throws Error(ComplexPole) if any candidate has
/// |Im| > imag_eps * (1 + |Re|).
std::vector<double> poles(const BarycentricRational& r, double imag_eps = kDefaultImagEps);

struct ResidueSolve {
  std::vector<Complex> values;  // A_j + i B_j
  double condition = 1.0;
  bool ill_conditioned = false;  // condition > kIllConditioned
};

/// Least-squares solve of sum_j x_j / (n_l^2 - C_j) = c_l over all support rows.
ResidueSolve residues(const BarycentricRational& r, std::span<const Complex> poles);
ResidueSolve residues(const BarycentricRational& r, std::span<const double> poles);

/// Drops terms with |A + iB| <= residue_eps * max |A + iB|.
std::pair<PartialFraction, int> remove_froissart(const PartialFraction& pf,
                                                 double residue_eps = kDefaultResidueEps);

struct Decomposition {
  PartialFraction pf;  // sorted by C
  int froissart_removed = 0;
  bool ill_conditioned = false;
};

/// Poles, residues and Froissart cleanup in one pass. Spurious poles of a
/// pole-zero doublet may be complex, so doublets are removed before the
/// surviving poles are required to be real (Error(ComplexPole) otherwise).
Decomposition decompose(const BarycentricRational& r, double imag_eps = kDefaultImagEps,
                        double residue_eps = kDefaultResidueEps);

struct Refinement {
  PartialFraction pf;
  double initial_residual = 0.0;  // 2-norm over the fitted entries
  double final_residual = 0.0;
  int iterations = 0;
};

/// Levenberg-Marquardt polish of every (A_j, B_j, C_j), poles kept real,
/// against all entries of mc whose index is not in `excluded`. Never returns
/// a worse fit than the input; returns it unchanged when there are fewer real
/// equations than unknowns.
Refinement refine(const PartialFraction& pf, const ModifiedCoefficients& mc,
                  std::span<const int> excluded, int max_iterations = 50);

/// p(z) / q(z) in the monomial basis, coefficients in ascending order, q monic.
struct KernelFit {
  std::vector<Complex> p;  // degree K-1
  std::vector<Complex> q;  // degree K, q.back() == 1
  Complex operator()(Complex z) const;
};

/// Solves the homogeneous interpolation system built from 2K samples
///   -p(n^2) + c_n q(n^2) = 0
/// via its smallest right singular vector. Throws
/// Error(KernelNotOneDimensional) when the two smallest singular values
/// are within a factor 1e-6, i.e. the kernel has dimension > 1.
KernelFit kernel_fit(const ModifiedCoefficients& mc, int K, std::span<const int> samples);

/// kernel_fit on the samples, then checks |p/q(n^2) - c_n| <= 1e-8 * max(1, |c_n|)
/// on every held-out index.
bool kernel_oracle(const ModifiedCoefficients& mc, int K, std::span<const int> samples,
                   std::span<const int> heldout);

}  // namespace nhfs
