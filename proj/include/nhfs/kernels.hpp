#pragma once

// Data-parallel inner loops of the reconstruction pipeline. Every kernel comes
// in two flavours: a plain serial reference (suffix _serial) kept for tests and
// benchmarks, and the OpenMP version used by the library. Both produce the same
// values up to floating-point summation order.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "nhfs/fourier.hpp"
#include "nhfs/signal_model.hpp"

namespace nhfs::kernels {

/// Below this many matrix entries / evaluations the OpenMP kernels stay serial.
inline constexpr long kParallelThreshold = 4096;

/// A(i, j) = (rows[i].value - support[j].value) / (rows[i].n^2 - support[j].n^2)
Eigen::MatrixXcd loewner_serial(std::span<const Coefficient> rows,
                                std::span<const Coefficient> support);
Eigen::MatrixXcd loewner(std::span<const Coefficient> rows, std::span<const Coefficient> support);

/// r(z) = sum w_j v_j / (z - n_j^2) / sum w_j / (z - n_j^2) at every z.
/// A z that coincides with a node n_k^2 with w_k != 0 yields v_k; nodes with
/// zero weight are skipped. A vanishing denominator yields NaN.
std::vector<Complex> barycentric_serial(std::span<const Coefficient> support,
                                        std::span<const Complex> weights,
                                        std::span<const Complex> z);
std::vector<Complex> barycentric(std::span<const Coefficient> support,
                                 std::span<const Complex> weights, std::span<const Complex> z);

/// Closed-form coefficients of the non-constant terms at each index.
std::vector<Complex> synthesize_serial(const SignalModel& model, double period,
                                       std::span<const int> indices);
std::vector<Complex> synthesize(const SignalModel& model, double period,
                                std::span<const int> indices);

}  // namespace nhfs::kernels
