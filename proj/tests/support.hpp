// Shared fixtures: random signal models and small helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include <Eigen/SVD>

#include "nhfs/fourier.hpp"
#include "nhfs/signal_model.hpp"

namespace nhfs::test {

inline std::vector<int> range(int lo, int hi) {
  std::vector<int> v(static_cast<std::size_t>(hi - lo + 1));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

struct ModelSpec {
  int nonperiodic = 1;
  int periodic = 0;           // P-periodic trig terms, integer aP in [1, max_index]
  int max_index = 3;          // largest Fourier index that will be given
  int hyperbolic = 0;          // cosh terms among the non-periodic ones
  bool constant = false;
  double gap = 0.05;           // minimum aP separation, also kept from integers
  double hyperbolic_gap = 0.05;
  double trig_lo = 0.2;        // trig aP range; trig_hi <= 0 means max_index
  double trig_hi = 0.0;
  double hyperbolic_lo = 0.2, hyperbolic_hi = 1.5;
};

// aP values ("x") of trig terms sit in [trig_lo, trig_hi], `gap` apart and
// `gap` away from every integer.
inline SignalModel random_model(std::mt19937_64& rng, double period, const ModelSpec& spec) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::vector<CosineTerm> terms;
  std::vector<double> trig_x, hyp_x;
  auto far_from = [](const std::vector<double>& xs, double x, double gap) {
    return std::all_of(xs.begin(), xs.end(), [&](double y) { return std::abs(x - y) >= gap; });
  };

  for (int k = 0; k < spec.nonperiodic; ++k) {
    CosineTerm t;
    t.gamma = between(0.5, 2.0);
    if (k < spec.hyperbolic) {
      double x;
      do x = between(spec.hyperbolic_lo, spec.hyperbolic_hi);
      while (!far_from(hyp_x, x, spec.hyperbolic_gap));
      hyp_x.push_back(x);
      t.kind = TermKind::Hyperbolic;
      t.freq = x / period;
      t.phase = between(-1.0, 1.0);
    } else {
      double x;
      do x = between(spec.trig_lo, spec.trig_hi > 0.0 ? spec.trig_hi : spec.max_index);
      while (!far_from(trig_x, x, spec.gap) || std::abs(x - std::round(x)) < spec.gap);
      trig_x.push_back(x);
      t.kind = TermKind::Trig;
      t.freq = x / period;
      t.phase = between(0.0, 2.0 * std::numbers::pi);
    }
    terms.push_back(t);
  }
  std::vector<int> used;
  for (int k = 0; k < spec.periodic; ++k) {
    int m;
    do m = 1 + static_cast<int>(unit(rng) * spec.max_index);
    while (m > spec.max_index || std::find(used.begin(), used.end(), m) != used.end() ||
           !far_from(trig_x, m, spec.gap));
    used.push_back(m);
    terms.push_back({between(0.5, 2.0), m / period, between(0.0, 2.0 * std::numbers::pi),
                     TermKind::Trig});
  }
  return canonicalize(std::move(terms), spec.constant ? between(-1.0, 1.0) : 0.0);
}

// First-order sensitivity of the exact least-squares problem: the frequency
// error (relative to 1 + a) that rounding of the data alone would cause for
// an optimal estimator using the given indices. Periodic terms are excluded
// together with their indices.
inline double predicted_frequency_error(const SignalModel& m, double period,
                                        std::span<const int> indices) {
  std::vector<AbcTriple> abc;
  std::vector<int> periodic;
  for (const auto& t : m.terms) {
    if (const int p = periodic_index(t, period)) {
      periodic.push_back(p);
    } else {
      abc.push_back(forward_abc(t, period));
    }
  }
  std::vector<int> rows;
  for (int n : indices) {
    if (n > 0 && std::find(periodic.begin(), periodic.end(), n) == periodic.end()) rows.push_back(n);
  }
  const auto k = static_cast<Eigen::Index>(abc.size());
  const auto r = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return 0.0;
  if (2 * r < 3 * k) return INFINITY;
  Eigen::MatrixXd jac(2 * r, 3 * k);
  double cmax = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    const double z = static_cast<double>(rows[i]) * rows[i];
    Complex c = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double d = z - abc[j].C;
      const Complex res(abc[j].A, abc[j].B);
      c += res / d;
      const Complex dc = res / (d * d);
      jac.block<2, 3>(2 * i, 3 * j) << dc.real(), 1.0 / d, 0.0, dc.imag(), 0.0, 1.0 / d;
    }
    cmax = std::max(cmax, std::abs(c));
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s(s.size() - 1) <= 0.0) return INFINITY;
  const Eigen::MatrixXd pinv =
      svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double x = std::sqrt(std::abs(abc[j].C));
    const double dc = pinv.row(3 * j).lpNorm<1>() * 1.2e-16 * cmax;
    const double a = x / period;
    worst = std::max(worst, dc / (2.0 * x * period) / (1.0 + a));
  }
  return worst;
}

// random_model, redrawn until predicted_frequency_error <= limit.
inline SignalModel well_conditioned_model(std::mt19937_64& rng, double period, const ModelSpec& spec,
                                          std::span<const int> indices, double limit,
                                          int& redraws) {
  for (;;) {
    SignalModel m = random_model(rng, period, spec);
    if (predicted_frequency_error(m, period, indices) <= limit) return m;
    ++redraws;
  }
}

inline SignalModel experiment1() {
  const double a[] = {5.0, 4.9, 1.0, 0.96, 0.92, 0.9};
  const double g[] = {1, 1, 2, 1, 1, 1};
  std::vector<CosineTerm> t;
  for (int j = 0; j < 6; ++j) t.push_back({g[j], a[j], 0.0, TermKind::Trig});
  return canonicalize(t, 0.0);
}

inline SignalModel experiment2() {
  const double a[] = {std::sqrt(89.0), std::sqrt(29.0), std::sqrt(21.0),
                      std::sqrt(3.0),  std::sqrt(2.0),  4.0};
  const double b[] = {0.5, 0.7, 0.0, 0.3, 0.2, 0.2};
  const double g[] = {0.5, 3, 2, 2, 1, 1};
  std::vector<CosineTerm> t;
  for (int j = 0; j < 6; ++j) t.push_back({g[j], a[j], b[j], TermKind::Trig});
  return canonicalize(t, 0.0);
}

}  // namespace nhfs::test
