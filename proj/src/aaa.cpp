#include "nhfs/aaa.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "nhfs/error.hpp"
#include "nhfs/kernels.hpp"

namespace nhfs {

namespace {

// Below this fraction of |c_S| both singular vectors already satisfy the side
// condition and v1 is taken as is.
constexpr double kSideConditionEps = 1e-14;

Eigen::VectorXcd as_vector(std::span<const Complex> v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::size_t argmax_residual(std::span<const double> res) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < res.size(); ++i) {
    if (res[i] > res[best]) best = i;
  }
  return best;
}

double max_residual(std::span<const double> res) {
  return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

// Combination of the two smallest right singular vectors of the Loewner
// matrix that satisfies w^T c_S = 0 (plain transpose, not conjugated).
std::vector<Complex> side_condition_weights(std::span<const Coefficient> rows,
                                            std::span<const Coefficient> support,
                                            WeightProduct product = WeightProduct::Bilinear) {
  const Eigen::MatrixXcd a = kernels::loewner(rows, support);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& v = svd.matrixV();
  const Eigen::Index m = a.cols();
  const Eigen::VectorXcd v1 = v.col(m - 1);
  const Eigen::VectorXcd v2 = v.col(m - 2);

  Eigen::VectorXcd cs(m);
  for (Eigen::Index j = 0; j < m; ++j) cs(j) = support[j].value;
  const bool conj = product == WeightProduct::Conjugated;
  const Complex p1 = conj ? v1.dot(cs) : (v1.transpose() * cs)(0);
  const Complex p2 = conj ? v2.dot(cs) : (v2.transpose() * cs)(0);
  Eigen::VectorXcd w = p2 * v1 - p1 * v2;
  const double wnorm = w.norm();
  if (!std::isfinite(wnorm)) throw Error(ErrorCode::DegenerateWeights, "non-finite weights");
  if (wnorm <= kSideConditionEps * cs.norm() || wnorm == 0.0) {
    w = v1;
  } else {
    w /= wnorm;
  }
  return {w.data(), w.data() + m};
}

}  // namespace

int default_mmax(int entry_count) { return std::clamp(entry_count / 2 + 1, 2, entry_count - 1); }

Complex evaluate_barycentric(const BarycentricRational& r, Complex z) {
  const Complex value = kernels::barycentric_serial(r.support, r.weights, {&z, 1}).front();
  if (std::isnan(value.real())) throw Error(ErrorCode::PoleHit, "denominator vanishes");
  return value;
}

std::vector<double> residuals(const BarycentricRational& r, std::span<const Coefficient> entries) {
  std::vector<Complex> z(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    z[i] = static_cast<double>(entries[i].n) * entries[i].n;
  }
  const auto values = kernels::barycentric(r.support, r.weights, z);
  std::vector<double> out(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double d = std::abs(values[i] - entries[i].value);
    out[i] = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
  }
  return out;
}

AaaState initialize(const ModifiedCoefficients& mc) {
  if (mc.entries.size() < 3) {
    throw Error(ErrorCode::InsufficientData, "need at least 3 positive-index coefficients");
  }
  std::vector<Coefficient> sorted = mc.entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const Coefficient& a, const Coefficient& b) { return a.n < b.n; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].n == sorted[i - 1].n) throw std::invalid_argument("repeated Fourier index");
  }
  std::vector<std::size_t> order(sorted.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(sorted[a].value) > std::abs(sorted[b].value);
  });

  const Coefficient first = sorted[order[0]];
  const Coefficient second = sorted[order[1]];
  AaaState state;
  state.rational.support = {first, second};
  const double norm = std::hypot(std::abs(first.value), std::abs(second.value));
  if (norm == 0.0) {
    state.rational.weights = {Complex{std::sqrt(0.5), 0.0}, Complex{std::sqrt(0.5), 0.0}};
  } else {
    state.rational.weights = {-second.value / norm, first.value / norm};
  }
  for (const auto& e : sorted) {
    if (e.n != first.n && e.n != second.n) state.remaining.push_back(e);
  }
  return state;
}

AaaState iterate(AaaState state, WeightProduct product) {
  auto& [r, remaining] = state;
  if (remaining.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "no least-squares row left for the weight solve");
  }
  const auto res = residuals(r, remaining);
  const std::size_t pick = argmax_residual(res);
  r.support.push_back(remaining[pick]);
  remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));

  r.weights = side_condition_weights(remaining, r.support, product);
  return state;
}

std::pair<BarycentricRational, AaaDiagnostics> run_aaa(const ModifiedCoefficients& mc, double tol,
                                                       int mmax, WeightProduct product) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int entries = static_cast<int>(mc.entries.size());
  if (entries < 3) {
    throw Error(ErrorCode::InsufficientData, "need at least 3 positive-index coefficients");
  }
  if (mmax == 0) mmax = default_mmax(entries);
  if (mmax < 2 || mmax > entries - 1) throw std::invalid_argument("mmax outside [2, L-1]");

  // tol is absolute for O(1) data and relative beyond that; an absolute 1e-13
  // is below rounding for coefficients of size 1e3 (large cosh terms).
  double scale = 1.0;
  for (const auto& e : mc.entries) scale = std::max(scale, std::abs(e.value));
  const double target = tol * scale;

  AaaState state = initialize(mc);
  AaaDiagnostics diag;
  double worst = max_residual(residuals(state.rational, state.remaining));
  while (!(worst < target) && static_cast<int>(state.rational.support.size()) < mmax) {
    state = iterate(std::move(state), product);
    ++diag.iterations;
    worst = max_residual(residuals(state.rational, state.remaining));
  }
  for (const auto& s : state.rational.support) diag.selection_order.push_back(s.n);
  diag.final_residual = worst;
  diag.converged = worst < target;
  return {std::move(state.rational), std::move(diag)};
}

std::pair<BarycentricRational, std::vector<int>> prune_vanishing_weights(
    const BarycentricRational& r, double weight_eps) {
  if (!(weight_eps > 0.0)) throw std::invalid_argument("weight_eps must be positive");
  double wmax = 0.0;
  for (const auto& w : r.weights) wmax = std::max(wmax, std::abs(w));
  BarycentricRational kept;
  std::vector<int> pruned;
  for (std::size_t j = 0; j < r.support.size(); ++j) {
    if (std::abs(r.weights[j]) <= weight_eps * wmax) {
      pruned.push_back(r.support[j].n);
    } else {
      kept.support.push_back(r.support[j]);
      kept.weights.push_back(r.weights[j]);
    }
  }
  if (kept.support.empty()) throw Error(ErrorCode::AllWeightsPruned, "every weight vanished");
  const double norm = as_vector(kept.weights).norm();
  for (auto& w : kept.weights) w /= norm;
  return {std::move(kept), std::move(pruned)};
}

BarycentricRational refit_weights(const BarycentricRational& r, const ModifiedCoefficients& mc,
                                  std::span<const int> excluded) {
  if (r.support.size() < 2) return r;
  std::set<int> skip(excluded.begin(), excluded.end());
  for (const auto& s : r.support) skip.insert(s.n);
  std::vector<Coefficient> rows;
  for (const auto& e : mc.entries) {
    if (!skip.contains(e.n)) rows.push_back(e);
  }
  if (rows.empty()) return r;
  BarycentricRational out = r;
  out.weights = side_condition_weights(rows, r.support);
  return out;
}

}  // namespace nhfs
