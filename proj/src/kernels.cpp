#include "nhfs/kernels.hpp"

#include <cmath>
#include <limits>

namespace nhfs::kernels {

namespace {

inline double square(int n) { return static_cast<double>(n) * static_cast<double>(n); }

// Relative size below which the barycentric denominator counts as zero.
constexpr double kPoleEps = 1e-14;

Complex barycentric_point(std::span<const Coefficient> support, std::span<const Complex> weights,
                          Complex z) {
  Complex num{0.0, 0.0};
  Complex den{0.0, 0.0};
  double scale = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (weights[j] == Complex{0.0, 0.0}) continue;
    const Complex diff = z - square(support[j].n);
    if (diff == Complex{0.0, 0.0}) return support[j].value;
    const Complex term = weights[j] / diff;
    num += term * support[j].value;
    den += term;
    scale += std::abs(term);
  }
  if (std::abs(den) <= kPoleEps * scale || scale == 0.0) {
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  }
  return num / den;
}

}  // namespace

Eigen::MatrixXcd loewner_serial(std::span<const Coefficient> rows,
                                std::span<const Coefficient> support) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd a(m, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      a(i, j) = (rows[i].value - support[j].value) / (square(rows[i].n) - square(support[j].n));
    }
  }
  return a;
}

Eigen::MatrixXcd loewner(std::span<const Coefficient> rows, std::span<const Coefficient> support) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd a(m, k);
#pragma omp parallel for collapse(2) if (m * k > kParallelThreshold)
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      a(i, j) = (rows[i].value - support[j].value) / (square(rows[i].n) - square(support[j].n));
    }
  }
  return a;
}

std::vector<Complex> barycentric_serial(std::span<const Coefficient> support,
                                        std::span<const Complex> weights,
                                        std::span<const Complex> z) {
  std::vector<Complex> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = barycentric_point(support, weights, z[i]);
  return out;
}

std::vector<Complex> barycentric(std::span<const Coefficient> support,
                                 std::span<const Complex> weights, std::span<const Complex> z) {
  const auto count = static_cast<long>(z.size());
  std::vector<Complex> out(z.size());
#pragma omp parallel for if (count * static_cast<long>(support.size()) > kParallelThreshold)
  for (long i = 0; i < count; ++i) out[i] = barycentric_point(support, weights, z[i]);
  return out;
}

std::vector<Complex> synthesize_serial(const SignalModel& model, double period,
                                       std::span<const int> indices) {
  std::vector<Complex> out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (const auto& term : model.terms) out[i] += coefficient_closed_form(term, period, indices[i]);
  }
  return out;
}

std::vector<Complex> synthesize(const SignalModel& model, double period,
                                std::span<const int> indices) {
  const auto count = static_cast<long>(indices.size());
  std::vector<Complex> out(indices.size());
#pragma omp parallel for if (count * static_cast<long>(model.terms.size()) > kParallelThreshold)
  for (long i = 0; i < count; ++i) {
    Complex sum{0.0, 0.0};
    for (const auto& term : model.terms) sum += coefficient_closed_form(term, period, indices[i]);
    out[i] = sum;
  }
  return out;
}

}  // namespace nhfs::kernels
