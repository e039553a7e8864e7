#include "nhfs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>

#include "nhfs/kernels.hpp"

namespace nhfs {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kZeroFrequency = 1e-10;
// Entries below this fraction of max|c~| count as exact zeros of the data.
constexpr double kZeroCoefficient = 1e-14;

// Largest imaginary part (relative to 1 + |Re|) that refinement may remove.
constexpr double kProjectionImagEps = 1e-4;

double coefficient_scale(const ModifiedCoefficients& mc) {
  double scale = 1.0;
  for (const auto& e : mc.entries) scale = std::max(scale, std::abs(e.value));
  return scale;
}

// max |c_n - pf(n^2)| over the entries outside Sigma
double fit_error(const PartialFraction& pf, const ModifiedCoefficients& mc,
                 std::span<const int> sigma) {
  double worst = 0.0;
  for (const auto& e : mc.entries) {
    if (std::find(sigma.begin(), sigma.end(), e.n) != sigma.end()) continue;
    const Complex z = static_cast<double>(e.n) * e.n;
    worst = std::max(worst, std::abs(evaluate_partial_fraction(pf, z) - e.value));
  }
  return worst;
}

std::pair<std::vector<CosineTerm>, std::vector<int>> periodic_from_differences(
    const ModifiedCoefficients& mc, std::span<const Complex> rational_values, double periodic_eps) {
  double biggest = 0.0;
  for (const auto& e : mc.entries) biggest = std::max(biggest, std::abs(e.value));
  const double threshold = periodic_eps * std::max(1.0, biggest);
  std::vector<std::pair<int, CosineTerm>> found;
  for (std::size_t i = 0; i < mc.entries.size(); ++i) {
    const int n = mc.entries[i].n;
    const Complex d = mc.entries[i].value - rational_values[i];
    if (!(std::abs(d) > threshold)) continue;
    // c~_n = (gamma/2) (cos b + (i/n) sin b)
    CosineTerm term;
    term.kind = TermKind::Trig;
    term.freq = n / mc.period;
    term.gamma = 2.0 * std::hypot(d.real(), n * d.imag());
    term.phase = wrap_phase(std::atan2(n * d.imag(), d.real()));
    found.emplace_back(n, term);
  }
  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::pair<std::vector<CosineTerm>, std::vector<int>> out;
  for (const auto& [n, term] : found) {
    out.first.push_back(term);
    out.second.push_back(n);
  }
  return out;
}

double residual_against(const SignalModel& model, const FourierData& data) {
  std::vector<int> indices;
  for (const auto& e : data.entries) indices.push_back(e.n);
  if (data.c0) indices.push_back(0);
  const FourierData synth = coefficients(model, data.period, indices);
  double worst = 0.0;
  for (std::size_t i = 0; i < data.entries.size(); ++i) {
    worst = std::max(worst, std::abs(synth.entries[i].value - data.entries[i].value));
  }
  if (data.c0) worst = std::max(worst, std::abs(*synth.c0 - *data.c0));
  return worst;
}

bool rational_part_vanishes(const ModifiedCoefficients& mc) {
  double biggest = 0.0;
  for (const auto& e : mc.entries) biggest = std::max(biggest, std::abs(e.value));
  std::size_t zeros = 0;
  for (const auto& e : mc.entries) {
    if (std::abs(e.value) <= kZeroCoefficient * biggest) ++zeros;
  }
  // A nonzero rational part of type (K1-1, K1) has at most K1-1 zeros, and
  // L >= 2K+2 data points bound K1 <= L/2 - 1.
  return 2 * zeros >= mc.entries.size();
}

}  // namespace

double phase_distance(double a, double b) {
  const double d = wrap_phase(a - b);
  return std::min(d, 2.0 * pi - d);
}

CosineTerm invert_parameters(const AbcTriple& abc, double period) {
  const auto [A, B, C] = abc;
  if (std::abs(C) < kZeroFrequency) {
    throw Error(ErrorCode::ZeroFrequency, "pole at C = 0 is reserved for the constant");
  }
  const double root = std::sqrt(std::abs(C));
  const double q = A * A + C * B * B;
  CosineTerm term;
  term.freq = root / period;

  if (C < 0.0) {
    if (!(q > 0.0) || !(A > 0.0)) {
      std::ostringstream os;
      os << "(A, B, C) = (" << A << ", " << B << ", " << C << ") is not a cosh term";
      throw Error(ErrorCode::InvalidTriple, os.str());
    }
    term.kind = TermKind::Hyperbolic;
    term.gamma = pi * std::sqrt(q) / (root * std::sinh(pi * root));
    // gamma sinh(pi x) / pi = sqrt(q) / x, hence sinh(pi x + b) = B x / sqrt(q).
    term.phase = std::asinh(B * root / std::sqrt(q)) - pi * root;
    return term;
  }

  if (std::abs(root - std::round(root)) < kPeriodicTolerance) {
    throw Error(ErrorCode::PeriodicPole, "sqrt(C) is integral");
  }
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidTriple, "A^2 + C B^2 must be positive");
  term.kind = TermKind::Trig;
  term.gamma = pi * std::sqrt(q) / (root * std::abs(std::sin(pi * root)));

  // With s = sin(pi x), x = sqrt(C):
  //   gamma s sin(b) / pi = A s / x - B cos(pi x)
  //   gamma s cos(b) / pi = -A cos(pi x) / x - B s
  // so atan2 recovers b on the full circle without a separate sign test.
  const double s = std::sin(pi * root), c = std::cos(pi * root);
  const double sgn = s > 0.0 ? 1.0 : -1.0;
  term.phase = wrap_phase(std::atan2(sgn * (A * s / root - B * c), sgn * (-A * c / root - B * s)));
  return term;
}

std::pair<std::vector<CosineTerm>, std::vector<int>> extract_periodic(
    const FourierData& data, const BarycentricRational& r, double periodic_eps) {
  if (!(periodic_eps > 0.0)) throw std::invalid_argument("periodic_eps must be positive");
  const ModifiedCoefficients mc = modify(data);
  std::vector<Complex> values;
  values.reserve(mc.entries.size());
  for (const auto& e : mc.entries) {
    values.push_back(evaluate_barycentric(r, static_cast<double>(e.n) * e.n));
  }
  return periodic_from_differences(mc, values, periodic_eps);
}

std::pair<std::vector<CosineTerm>, std::vector<int>> extract_periodic(
    const FourierData& data, const PartialFraction& pf, double periodic_eps) {
  if (!(periodic_eps > 0.0)) throw std::invalid_argument("periodic_eps must be positive");
  const ModifiedCoefficients mc = modify(data);
  std::vector<Complex> values;
  values.reserve(mc.entries.size());
  for (const auto& e : mc.entries) {
    values.push_back(evaluate_partial_fraction(pf, static_cast<double>(e.n) * e.n));
  }
  return periodic_from_differences(mc, values, periodic_eps);
}

double extract_constant(const FourierData& data, const PartialFraction& pf) {
  if (!data.c0) throw Error(ErrorCode::MissingC0, "index-0 coefficient not given");
  return data.c0->real() - evaluate_partial_fraction(pf, 0.0).real();
}

ReconstructionReport reconstruct(const FourierData& data, const ReconstructionConfig& config) {
  if (data.entries.size() < 3) {
    throw Error(ErrorCode::InsufficientData, "need at least 3 positive-index coefficients");
  }
  ReconstructionReport report;
  const ModifiedCoefficients mc = modify(data);
  std::vector<CosineTerm> terms;
  PartialFraction pf;

  if (rational_part_vanishes(mc)) {
    report.aaa.converged = true;
    report.warnings.push_back("data has no non-periodic part; rational fit skipped");
    const std::vector<Complex> zeros(mc.entries.size(), Complex{0.0, 0.0});
    auto [periodic, sigma] = periodic_from_differences(mc, zeros, config.periodic_eps);
    terms = std::move(periodic);
    report.periodic_indices = std::move(sigma);
  } else {
    auto [rational, diag] = run_aaa(mc, config.tol, config.mmax);
    report.aaa = std::move(diag);
    if (!report.aaa.converged) {
      std::ostringstream os;
      os << "rational fit stopped at support size " << report.aaa.selection_order.size()
         << " with residual " << report.aaa.final_residual;
      report.warnings.push_back(os.str());
    }
    try {
      auto [pruned, pruned_indices] = prune_vanishing_weights(rational, config.weight_eps);
      if (!pruned_indices.empty()) pruned = refit_weights(pruned, mc, pruned_indices);
      report.pruned_indices = std::move(pruned_indices);
      Decomposition dec;
      std::optional<Error> not_real;
      try {
        dec = decompose(pruned, config.imag_eps, config.residue_eps);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ComplexPole || !config.refine) throw;
        // Near-real poles get one chance: project, refine, and keep them only
        // if a real-pole model then reproduces the data.
        dec = decompose(pruned, kProjectionImagEps, config.residue_eps);
        not_real = e;
      }
      report.froissart_removed = dec.froissart_removed;
      if (dec.ill_conditioned) report.warnings.push_back("residue system is ill-conditioned");
      pf = std::move(dec.pf);
      // The partial fraction has the doublets removed, so it is the safer
      // reference for the periodic residuals than the barycentric form.
      auto [periodic, sigma] = extract_periodic(data, pf, config.periodic_eps);
      if (config.refine) {
        const Refinement ref = refine(pf, mc, sigma);
        if (ref.final_residual < ref.initial_residual) {
          pf = ref.pf;
          std::tie(periodic, sigma) = extract_periodic(data, pf, config.periodic_eps);
        }
      }
      if (not_real) {
        if (fit_error(pf, mc, sigma) > config.imag_eps * coefficient_scale(mc)) throw *not_real;
        report.warnings.push_back("near-real poles projected onto the real axis and refined");
      }
      for (const auto& abc : pf.terms) terms.push_back(invert_parameters(abc, data.period));
      terms.insert(terms.end(), periodic.begin(), periodic.end());
      report.periodic_indices = std::move(sigma);
    } catch (const Error& e) {
      throw ReconstructionError(e, report.aaa, report.warnings);
    }
  }

  const double constant = data.c0 ? extract_constant(data, pf) : 0.0;
  report.model = canonicalize(std::move(terms), constant);
  report.residual_max = residual_against(report.model, data);
  return report;
}

std::vector<BatchResult> reconstruct_many_serial(std::span<const FourierData> datasets,
                                                 const ReconstructionConfig& config) {
  std::vector<BatchResult> out(datasets.size());
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    try {
      out[i].report = reconstruct(datasets[i], config);
    } catch (const Error& e) {
      out[i].error = e.code();
      out[i].message = e.what();
    }
  }
  return out;
}

std::vector<BatchResult> reconstruct_many(std::span<const FourierData> datasets,
                                          const ReconstructionConfig& config) {
  const auto count = static_cast<long>(datasets.size());
  std::vector<BatchResult> out(datasets.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      out[i].report = reconstruct(datasets[i], config);
    } catch (const Error& e) {
      out[i].error = e.code();
      out[i].message = e.what();
    } catch (const std::exception& e) {
      out[i].message = e.what();
    }
  }
  return out;
}

ModelComparison compare_models(const SignalModel& reference, const SignalModel& estimate) {
  ModelComparison cmp;
  std::vector<bool> used(estimate.terms.size(), false);
  for (const auto& ref : reference.terms) {
    TermMatch row{ref, std::nullopt};
    std::size_t best = estimate.terms.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < estimate.terms.size(); ++j) {
      const auto& cand = estimate.terms[j];
      if (used[j] || cand.kind != ref.kind) continue;
      const double gap = std::abs(cand.freq - ref.freq);
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best < estimate.terms.size()) {
      used[best] = true;
      const auto& est = estimate.terms[best];
      row.estimate = est;
      row.freq_error = std::abs(est.freq - ref.freq);
      row.gamma_error = std::abs(est.gamma - ref.gamma);
      row.phase_error = ref.kind == TermKind::Trig ? phase_distance(est.phase, ref.phase)
                                                   : std::abs(est.phase - ref.phase);
      cmp.max_freq_error = std::max(cmp.max_freq_error, row.freq_error);
      cmp.max_gamma_error = std::max(cmp.max_gamma_error, row.gamma_error);
      cmp.max_phase_error = std::max(cmp.max_phase_error, row.phase_error);
    } else {
      cmp.term_count_mismatch = true;
    }
    cmp.rows.push_back(row);
  }
  if (reference.terms.size() != estimate.terms.size()) cmp.term_count_mismatch = true;
  cmp.constant_error = std::abs(reference.constant - estimate.constant);
  return cmp;
}

}  // namespace nhfs
