#include "nhfs/fourier.hpp"

#include <limits>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "nhfs/error.hpp"
#include "nhfs/kernels.hpp"

namespace nhfs {

namespace {

constexpr double pi = std::numbers::pi;

double parity_sign(double m) { return std::fmod(m, 2.0) == 0.0 ? 1.0 : -1.0; }

Complex trig_coefficient(const CosineTerm& term, double period, int n) {
  const double x = term.freq * period;
  const double m = std::round(x);
  const double delta = x - m;  // exact for |delta| <= 0.5
  // sin(pi x)/(x - n), written so that x -> n stays well conditioned. Evaluated
  // continuously through the periodic band; only delta == 0 needs the limit.
  const double sin_px = parity_sign(m) * std::sin(pi * delta);
  double ratio;
  if (static_cast<double>(n) == m) {
    ratio = parity_sign(m) * (delta == 0.0 ? pi : std::sin(pi * delta) / delta);
  } else {
    ratio = sin_px / (x - n);
  }
  const double scale = term.gamma * ratio / (pi * (x + n));
  const double theta = pi * x + term.phase;
  return {scale * x * std::cos(theta), scale * n * std::sin(theta)};
}

// Gauss-Legendre panel sum on [a, b].
template <class F>
Complex panel(const F& f, double a, double b) {
  using rule = boost::math::quadrature::gauss<double, 15>;
  static const auto& x = rule::abscissa();
  static const auto& w = rule::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex sum = w[0] * f(mid);  // odd order: x[0] == 0
  for (std::size_t k = 1; k < x.size(); ++k) {
    sum += w[k] * (f(mid - half * x[k]) + f(mid + half * x[k]));
  }
  return half * sum;
}

}  // namespace

int periodic_index(const CosineTerm& term, double period) {
  if (term.kind != TermKind::Trig) return 0;
  const double x = term.freq * period;
  const double m = std::round(x);
  if (m >= 1.0 && std::abs(x - m) < kPeriodicTolerance) return static_cast<int>(m);
  return 0;
}

Complex coefficient_closed_form(const CosineTerm& term, double period, int n) {
  if (term.kind == TermKind::Trig) return trig_coefficient(term, period, n);
  const AbcTriple abc = forward_abc(term, period);
  const double nn = static_cast<double>(n);
  return Complex(abc.A, abc.B * nn) / (nn * nn - abc.C);
}

FourierData coefficients(const SignalModel& model, double period, std::span<const int> indices) {
  std::set<int> seen;
  for (int n : indices) {
    if (n < 0) throw std::invalid_argument("negative Fourier index");
    if (!seen.insert(n).second) throw std::invalid_argument("repeated Fourier index");
  }
  const std::vector<Complex> values = kernels::synthesize(model, period, indices);
  FourierData data;
  data.period = period;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] == 0) {
      data.c0 = values[i] + model.constant;
    } else {
      data.entries.push_back({indices[i], values[i]});
    }
  }
  return data;
}

Complex coefficient_quadrature(const SignalModel& model, double period, int n, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  const double omega = 2.0 * pi * n / period;
  auto integrand = [&](double t) {
    return evaluate(model, t) * std::polar(1.0 / period, -omega * t);
  };

  double max_freq = 0.0;
  for (const auto& term : model.terms) max_freq = std::max(max_freq, term.freq);
  const int initial = 1 + static_cast<int>(std::ceil(n + max_freq * period));

  constexpr long budget = 1L << 20;
  long evaluations = 0;
  std::vector<std::pair<double, double>> stack;
  for (int k = initial; k-- > 0;) {
    stack.emplace_back(period * k / initial, period * (k + 1) / initial);
  }
  Complex total{0.0, 0.0};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (a + b);
    const Complex coarse = panel(integrand, a, b);
    const Complex fine = panel(integrand, a, mid) + panel(integrand, mid, b);
    evaluations += 3;
    // Rounding floor: large hyperbolic terms cannot be resolved below eps * |f|.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (b - a) *
                         std::max(std::abs(integrand(a)), std::abs(integrand(b)));
    if (std::abs(fine - coarse) <= std::max(tol * (b - a) / period, floor) ||
        b - a < 1e-12 * period) {
      total += fine;
    } else {
      stack.emplace_back(mid, b);
      stack.emplace_back(a, mid);
    }
    if (evaluations > budget) {
      throw Error(ErrorCode::QuadratureNoConvergence, "panel budget exhausted");
    }
  }
  return total;
}

ModifiedCoefficients modify(const FourierData& data) {
  ModifiedCoefficients mc{data.period, {}};
  mc.entries.reserve(data.entries.size());
  for (const auto& [n, c] : data.entries) {
    if (n < 1) throw std::invalid_argument("modified coefficients need indices >= 1");
    mc.entries.push_back({n, Complex(c.real(), c.imag() / n)});
  }
  return mc;
}

FourierData unmodify(const ModifiedCoefficients& mc) {
  FourierData data{mc.period, {}, std::nullopt};
  data.entries.reserve(mc.entries.size());
  for (const auto& [n, c] : mc.entries) {
    data.entries.push_back({n, Complex(c.real(), c.imag() * n)});
  }
  return data;
}

AbcTriple forward_abc(const CosineTerm& term, double period) {
  const double x = term.freq * period;
  if (term.kind == TermKind::Trig) {
    if (periodic_index(term, period) != 0) {
      throw Error(ErrorCode::PeriodicTerm, "freq*P is integral; no rational representation");
    }
    const double s = std::sin(pi * x);
    const double theta = pi * x + term.phase;
    return {-(term.gamma * x / pi) * s * std::cos(theta), -(term.gamma / pi) * s * std::sin(theta),
            x * x};
  }
  const double s = std::sinh(pi * x);
  const double theta = pi * x + term.phase;
  return {(term.gamma * x / pi) * s * std::cosh(theta), (term.gamma / pi) * s * std::sinh(theta),
          -x * x};
}

}  // namespace nhfs
