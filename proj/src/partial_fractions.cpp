#include "nhfs/partial_fractions.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nhfs/error.hpp"

namespace nhfs {

namespace {

constexpr double kInfiniteEigenvalueCap = 1e12;
constexpr double kNodeTolerance = 1e-12;

double square(int n) { return static_cast<double>(n) * n; }

const Complex* find_value(const ModifiedCoefficients& mc, int n) {
  for (const auto& e : mc.entries) {
    if (e.n == n) return &e.value;
  }
  return nullptr;
}

}  // namespace

Complex evaluate_partial_fraction(const PartialFraction& pf, Complex z) {
  Complex sum{0.0, 0.0};
  for (const auto& t : pf.terms) sum += Complex(t.A, t.B) / (z - t.C);
  return sum;
}

std::vector<Complex> pole_candidates(const BarycentricRational& r) {
  const int m = static_cast<int>(r.support.size());
  if (m < 1) throw std::invalid_argument("empty support");
  const int size = m + 1;
  std::vector<Complex> a(static_cast<std::size_t>(size) * size, Complex{0.0, 0.0});
  std::vector<Complex> b(a.size(), Complex{0.0, 0.0});
  auto at = [size](int i, int j) { return static_cast<std::size_t>(j) * size + i; };
  double max_node = 0.0;
  for (int j = 1; j <= m; ++j) {
    a[at(0, j)] = r.weights[j - 1];
    a[at(j, 0)] = 1.0;
    a[at(j, j)] = square(r.support[j - 1].n);
    b[at(j, j)] = 1.0;
    max_node = std::max(max_node, square(r.support[j - 1].n));
  }
  std::vector<Complex> alpha(size), beta(size);
  const lapack_int info =
      LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', size, a.data(), size, b.data(), size,
                    alpha.data(), beta.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw Error(ErrorCode::WrongPoleCount, "generalized eigensolver failed, info " +
                                               std::to_string(info));
  }
  std::vector<Complex> out;
  for (int k = 0; k < size; ++k) {
    if (beta[k] == Complex{0.0, 0.0}) continue;
    const Complex lambda = alpha[k] / beta[k];
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) continue;
    if (std::abs(lambda) > kInfiniteEigenvalueCap * std::max(1.0, max_node)) continue;
    out.push_back(lambda);
  }
  if (static_cast<int>(out.size()) != m - 1) {
    std::ostringstream os;
    os << out.size() << " finite eigenvalues for support size " << m;
    throw Error(ErrorCode::WrongPoleCount, os.str());
  }
  std::sort(out.begin(), out.end(),
            [](Complex x, Complex y) { return x.real() < y.real(); });
  return out;
}

std::vector<double> poles(const BarycentricRational& r, double imag_eps) {
  std::vector<double> out;
  for (const Complex& lambda : pole_candidates(r)) {
    if (std::abs(lambda.imag()) > imag_eps * (1.0 + std::abs(lambda.real()))) {
      std::ostringstream os;
      os << "pole " << lambda << " is not real";
      throw Error(ErrorCode::ComplexPole, os.str());
    }
    out.push_back(lambda.real());
  }
  return out;
}

ResidueSolve residues(const BarycentricRational& r, std::span<const Complex> poles) {
  ResidueSolve out;
  if (poles.empty()) return out;
  const auto rows = static_cast<Eigen::Index>(r.support.size());
  const auto cols = static_cast<Eigen::Index>(poles.size());
  Eigen::MatrixXcd v(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index l = 0; l < rows; ++l) {
    rhs(l) = r.support[l].value;
    for (Eigen::Index j = 0; j < cols; ++j) v(l, j) = 1.0 / (square(r.support[l].n) - poles[j]);
  }
  // Eigen's SVD solve misbehaves on non-finite input; a pole on a node is a hit anyway.
  if (!v.allFinite() || !rhs.allFinite()) {
    throw Error(ErrorCode::PoleHit, "pole coincides with a support node");
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXcd x = svd.solve(rhs);
  const auto& s = svd.singularValues();
  out.condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1)
                                        : std::numeric_limits<double>::infinity();
  out.ill_conditioned = out.condition > kIllConditioned;
  out.values.assign(x.data(), x.data() + x.size());
  return out;
}

ResidueSolve residues(const BarycentricRational& r, std::span<const double> poles) {
  std::vector<Complex> z(poles.begin(), poles.end());
  return residues(r, std::span<const Complex>(z));
}

std::pair<PartialFraction, int> remove_froissart(const PartialFraction& pf, double residue_eps) {
  if (!(residue_eps > 0.0)) throw std::invalid_argument("residue_eps must be positive");
  double biggest = 0.0;
  for (const auto& t : pf.terms) biggest = std::max(biggest, std::hypot(t.A, t.B));
  PartialFraction kept;
  for (const auto& t : pf.terms) {
    if (std::hypot(t.A, t.B) > residue_eps * biggest) kept.terms.push_back(t);
  }
  const int removed = static_cast<int>(pf.terms.size() - kept.terms.size());
  return {std::move(kept), removed};
}

Decomposition decompose(const BarycentricRational& r, double imag_eps, double residue_eps) {
  if (!(residue_eps > 0.0)) throw std::invalid_argument("residue_eps must be positive");
  std::vector<Complex> candidates = pole_candidates(r);
  Decomposition out;
  // A vanishing weight leaves an eigenvalue on its node: a doublet by construction.
  std::erase_if(candidates, [&](Complex lambda) {
    const bool on_node = std::any_of(r.support.begin(), r.support.end(), [&](const Coefficient& s) {
      const double n2 = square(s.n);
      return std::abs(lambda - n2) <= kNodeTolerance * std::max(1.0, n2);
    });
    out.froissart_removed += on_node;
    return on_node;
  });
  const ResidueSolve res = residues(r, std::span<const Complex>(candidates));

  out.ill_conditioned = res.ill_conditioned;
  double biggest = 0.0;
  for (const Complex& x : res.values) biggest = std::max(biggest, std::abs(x));
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (std::abs(res.values[j]) <= residue_eps * biggest) {
      ++out.froissart_removed;
      continue;
    }
    const Complex lambda = candidates[j];
    if (std::abs(lambda.imag()) > imag_eps * (1.0 + std::abs(lambda.real()))) {
      std::ostringstream os;
      os << "pole " << lambda << " with residue " << res.values[j] << " is not real";
      throw Error(ErrorCode::ComplexPole, os.str());
    }
    out.pf.terms.push_back({res.values[j].real(), res.values[j].imag(), lambda.real()});
  }
  return out;
}

Refinement refine(const PartialFraction& pf, const ModifiedCoefficients& mc,
                  std::span<const int> excluded, int max_iterations) {
  Refinement out{pf, 0.0, 0.0, 0};
  std::vector<Coefficient> rows;
  for (const auto& e : mc.entries) {
    if (std::find(excluded.begin(), excluded.end(), e.n) == excluded.end()) rows.push_back(e);
  }
  const auto k = static_cast<Eigen::Index>(pf.terms.size());
  const auto m = static_cast<Eigen::Index>(rows.size());
  // residual r_n = sum_j (A_j + i B_j) / (n^2 - C_j) - c_n, split into re/im rows
  auto residual = [&](const Eigen::VectorXd& theta) {
    Eigen::VectorXd r(2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double z = square(rows[i].n);
      Complex sum = -rows[i].value;
      for (Eigen::Index j = 0; j < k; ++j) {
        sum += Complex(theta(3 * j), theta(3 * j + 1)) / (z - theta(3 * j + 2));
      }
      r(2 * i) = sum.real();
      r(2 * i + 1) = sum.imag();
    }
    return r;
  };
  Eigen::VectorXd theta(3 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    theta.segment<3>(3 * j) << pf.terms[j].A, pf.terms[j].B, pf.terms[j].C;
  }
  Eigen::VectorXd r = residual(theta);
  out.initial_residual = out.final_residual = r.norm();
  if (k == 0 || 2 * m < 3 * k || !std::isfinite(out.initial_residual)) return out;

  double lambda = 1e-6;
  for (; out.iterations < max_iterations; ++out.iterations) {
    Eigen::MatrixXd jac(2 * m, 3 * k);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double z = square(rows[i].n);
      for (Eigen::Index j = 0; j < k; ++j) {
        const double d = z - theta(3 * j + 2);
        const Complex dc = Complex(theta(3 * j), theta(3 * j + 1)) / (d * d);
        jac.block<2, 3>(2 * i, 3 * j) << 1.0 / d, 0.0, dc.real(), 0.0, 1.0 / d, dc.imag();
      }
    }
    const Eigen::VectorXd scale = jac.colwise().norm().transpose().cwiseMax(1e-300);
    bool improved = false;
    while (lambda < 1e10) {
      // damped step from the augmented least-squares system [J; sqrt(l) D] dx = [-r; 0]
      Eigen::MatrixXd aug(2 * m + 3 * k, 3 * k);
      aug << jac, (std::sqrt(lambda) * scale).asDiagonal().toDenseMatrix();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * m + 3 * k);
      rhs.head(2 * m) = -r;
      const Eigen::VectorXd step = aug.colPivHouseholderQr().solve(rhs);
      const Eigen::VectorXd trial = theta + step;
      const Eigen::VectorXd r_trial = residual(trial);
      const double norm_trial = r_trial.norm();
      if (std::isfinite(norm_trial) && norm_trial < out.final_residual) {
        const bool tiny = step.cwiseAbs().maxCoeff() <= 1e-15 * theta.cwiseAbs().maxCoeff();
        theta = trial;
        r = r_trial;
        out.final_residual = norm_trial;
        lambda = std::max(lambda * 0.1, 1e-12);
        improved = !tiny;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    out.pf.terms[j] = {theta(3 * j), theta(3 * j + 1), theta(3 * j + 2)};
  }
  std::sort(out.pf.terms.begin(), out.pf.terms.end(),
            [](const AbcTriple& a, const AbcTriple& b) { return a.C < b.C; });
  return out;
}

Complex KernelFit::operator()(Complex z) const {
  auto horner = [z](const std::vector<Complex>& c) {
    Complex acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  return horner(p) / horner(q);
}

KernelFit kernel_fit(const ModifiedCoefficients& mc, int K, std::span<const int> samples) {
  if (K < 1) throw std::invalid_argument("K must be positive");
  if (static_cast<int>(samples.size()) != 2 * K) {
    throw std::invalid_argument("kernel fit needs exactly 2K samples");
  }
  const Eigen::Index rows = 2 * K;
  const Eigen::Index cols = 2 * K + 1;
  Eigen::MatrixXcd w(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Complex* c = find_value(mc, samples[i]);
    if (c == nullptr) throw std::invalid_argument("sample index not in data");
    const double z = square(samples[i]);
    double power = 1.0;
    for (int r = 0; r <= K; ++r) {
      if (r < K) w(i, r) = -power;
      w(i, K + r) = *c * power;
      power *= z;
    }
  }
  // Column equilibration leaves the kernel dimension unchanged.
  Eigen::VectorXd scale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    scale(j) = w.col(j).norm();
    if (scale(j) == 0.0) scale(j) = 1.0;
    w.col(j) /= scale(j);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(rows - 1) <= 1e-6 * s(rows > 1 ? rows - 2 : 0) || s(rows - 1) == 0.0) {
    std::ostringstream os;
    os << "smallest singular values " << s(rows - 1) << " and " << s(rows > 1 ? rows - 2 : 0);
    throw Error(ErrorCode::KernelNotOneDimensional, os.str());
  }
  Eigen::VectorXcd x = svd.matrixV().col(cols - 1);
  for (Eigen::Index j = 0; j < cols; ++j) x(j) /= scale(j);
  x /= x(cols - 1);
  KernelFit fit;
  fit.p.assign(x.data(), x.data() + K);
  fit.q.assign(x.data() + K, x.data() + cols);
  return fit;
}

bool kernel_oracle(const ModifiedCoefficients& mc, int K, std::span<const int> samples,
                   std::span<const int> heldout) {
  const KernelFit fit = kernel_fit(mc, K, samples);
  for (int n : heldout) {
    const Complex* c = find_value(mc, n);
    if (c == nullptr) throw std::invalid_argument("held-out index not in data");
    if (std::abs(fit(square(n)) - *c) > 1e-8 * std::max(1.0, std::abs(*c))) return false;
  }
  return true;
}

}  // namespace nhfs
