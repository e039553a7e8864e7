#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nhfs/error.hpp"
#include "nhfs/fourier.hpp"
#include "support.hpp"

using namespace nhfs;

namespace {
constexpr double pi = std::numbers::pi;

CosineTerm trig(double g, double a, double b) { return {g, a, b, TermKind::Trig}; }
CosineTerm hyp(double g, double a, double b) { return {g, a, b, TermKind::Hyperbolic}; }

// Plain composite Simpson on a fine grid: a second, non-adaptive quadrature.
Complex simpson(const SignalModel& m, double P, int n, int panels) {
  const double h = P / panels;
  Complex sum{0, 0};
  for (int k = 0; k <= panels; ++k) {
    const double t = k * h;
    const double w = (k == 0 || k == panels) ? 1 : (k % 2 ? 4 : 2);
    sum += w * evaluate(m, t) * std::polar(1.0, -2 * pi * n * t / P);
  }
  return sum * h / 3.0 / P;
}
}  // namespace

TEST_SUITE("fourier") {
  TEST_CASE("periodic term") {
    const CosineTerm t = trig(1, 1, 0);
    const Complex c1 = coefficient_closed_form(t, 1, 1);
    CHECK(c1.real() == doctest::Approx(0.5));
    CHECK(std::abs(c1.imag()) < 1e-15);
    CHECK(std::abs(coefficient_closed_form(t, 1, 2)) < 1e-15);
    CHECK(periodic_index(t, 1) == 1);
    CHECK(periodic_index(trig(1, 2.5, 0), 2) == 5);
    CHECK(periodic_index(trig(1, std::sqrt(2.0), 0), 1) == 0);
    CHECK(periodic_index(hyp(1, 1, 0), 1) == 0);
  }

  TEST_CASE("periodic term with phase: c_m = gamma/2 e^{ib}") {
    const Complex c = coefficient_closed_form(trig(2, 3, 0.7), 1, 3);
    CHECK(std::abs(c - std::polar(1.0, 0.7)) < 1e-14);
  }

  TEST_CASE("closed form vs quadrature, single examples") {
    const SignalModel m = canonicalize({trig(1, std::sqrt(2.0), 0)}, 0);
    const int idx[] = {1};
    const Complex closed = coefficients(m, 1, idx).entries[0].value;
    CHECK(std::abs(closed - coefficient_quadrature(m, 1, 1, 1e-12)) < 1e-10);
    CHECK(std::abs(closed - simpson(m, 1, 1, 20000)) < 1e-10);

    CHECK(std::abs(coefficient_quadrature(SignalModel{}, 1, 3, 1e-12)) == 0.0);
    const SignalModel per = canonicalize({trig(1, 1, 0)}, 0);
    CHECK(std::abs(coefficient_quadrature(per, 1, 1, 1e-12) - 0.5) < 1e-11);
    CHECK_THROWS_AS(coefficient_quadrature(per, 1, 1, 0.0), std::invalid_argument);
  }

  TEST_CASE("closed form vs quadrature on random models") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 12; ++trial) {
      const double P = 0.5 + 2 * u(rng);
      std::vector<CosineTerm> terms;
      const int K = 1 + trial % 5;
      for (int k = 0; k < K; ++k) {
        double a;
        do a = 10 * u(rng);
        while (std::abs(a * P - std::round(a * P)) < 1e-3);
        terms.push_back(trig(0.5 + u(rng), a + 1e-3 * k, 2 * pi * u(rng)));
      }
      const SignalModel m = canonicalize(terms, 0);
      for (int n = 1; n <= 40; n += 3) {
        const int idx[] = {n};
        const Complex closed = coefficients(m, P, idx).entries[0].value;
        worst = std::max(worst, std::abs(closed - coefficient_quadrature(m, P, n, 1e-11)));
      }
    }
    CHECK(worst <= 1e-9);
  }

  TEST_CASE("near-periodic terms are continuous across the periodic band") {
    // x = m + delta: the coefficients must approach the periodic limit linearly.
    const double P = 1.3;
    for (double delta : {1e-5, 1e-7, 1e-9, 1e-11}) {
      const CosineTerm t = trig(1.2, (3 + delta) / P, 0.4);
      const SignalModel m = canonicalize({t}, 0);
      for (int n : {2, 3, 4}) {
        const Complex exact = coefficient_quadrature(m, P, n, 1e-12);
        CHECK(std::abs(coefficient_closed_form(t, P, n) - exact) < 1e-10);
      }
    }
  }

  TEST_CASE("rational structure against the forward map") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const double P = 0.5 + 3 * u(rng);
      const bool h = trial % 3 == 0;
      double x;
      do x = h ? 0.1 + 2 * u(rng) : 0.1 + 15 * u(rng);
      while (!h && std::abs(x - std::round(x)) < 0.01);
      const CosineTerm t{0.5 + u(rng), x / P, h ? 2 * u(rng) - 1 : 2 * pi * u(rng),
                         h ? TermKind::Hyperbolic : TermKind::Trig};
      const AbcTriple abc = forward_abc(t, P);
      CHECK((h ? abc.C < 0 : abc.C > 0));
      for (int n = 1; n <= 40; ++n) {
        const Complex rational = Complex(abc.A, abc.B * n) / (n * double(n) - abc.C);
        const Complex closed = coefficient_closed_form(t, P, n);
        CHECK(std::abs(closed - rational) <= 1e-12 * std::max(1e-300, std::abs(rational)) + 1e-15);
      }
    }
  }

  TEST_CASE("forward_abc examples") {
    const AbcTriple a = forward_abc(trig(1, 0.5, 0), 1);
    CHECK(std::abs(a.A) < 1e-16);
    CHECK(a.B == doctest::Approx(-1 / pi));
    CHECK(a.C == doctest::Approx(0.25));

    const AbcTriple b = forward_abc(trig(2, 0.25, pi / 2), 1);
    CHECK(b.A == doctest::Approx(0.25 / pi));
    CHECK(b.B == doctest::Approx(-1 / pi));
    CHECK(b.C == doctest::Approx(0.0625));

    try {
      forward_abc(trig(1, 1, 0), 1);
      FAIL("expected PeriodicTerm");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PeriodicTerm);
    }
  }

  TEST_CASE("conjugate symmetry") {
    // c_{-n} = conj(c_n): the closed form at -n is the conjugate, and c_0 is real.
    const SignalModel m = canonicalize({trig(1, 0.37, 1.1), hyp(0.8, 0.2, -0.4)}, 0.3);
    for (const auto& t : m.terms) {
      for (int n = 1; n < 6; ++n) {
        CHECK(std::abs(coefficient_closed_form(t, 2, -n) - std::conj(coefficient_closed_form(t, 2, n))) <
              1e-15);
      }
    }
    const int idx[] = {0};
    CHECK(coefficients(m, 2, idx).c0->imag() == 0.0);
  }

  TEST_CASE("coefficients of trivial models") {
    const auto idx = test::range(0, 4);
    const FourierData empty = coefficients(SignalModel{}, 1, idx);
    for (const auto& e : empty.entries) CHECK(e.value == Complex{});
    const FourierData constant = coefficients(SignalModel{{}, 3.0}, 1, idx);
    CHECK(*constant.c0 == Complex(3.0));
    CHECK(constant.entries.front().value == Complex{});
    CHECK(constant.entries.size() == 4);

    const int repeated[] = {1, 2, 1};
    CHECK_THROWS_AS(coefficients(SignalModel{}, 1, repeated), std::invalid_argument);
    const int negative[] = {-1};
    CHECK_THROWS_AS(coefficients(SignalModel{}, 1, negative), std::invalid_argument);
  }

  TEST_CASE("modify and unmodify") {
    FourierData d{1.0, {{2, {3.0, 4.0}}, {1, {0.0, 1.0}}, {5, {2.0, 0.0}}}, {}};
    const ModifiedCoefficients mc = modify(d);
    CHECK(mc.entries[0].value == Complex(3.0, 2.0));
    CHECK(mc.entries[1].value == Complex(0.0, 1.0));
    CHECK(mc.entries[2].value == Complex(2.0, 0.0));
    CHECK(unmodify(ModifiedCoefficients{1.0, {{3, {1.0, 1.0}}}}).entries[0].value == Complex(1.0, 3.0));

    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    ModifiedCoefficients rnd{1.7, {}};
    for (int n = 1; n <= 50; ++n) rnd.entries.push_back({n, {g(rng), g(rng)}});
    // (y*n)/n is not exact in floating point; one rounding is the best possible.
    const ModifiedCoefficients back = modify(unmodify(rnd));
    for (std::size_t i = 0; i < rnd.entries.size(); ++i) {
      CHECK(std::abs(back.entries[i].value - rnd.entries[i].value) <= 2.3e-16 * std::abs(rnd.entries[i].value));
    }
    FourierData raw{1.7, {}, {}};
    for (int n = 1; n <= 50; ++n) raw.entries.push_back({n, {g(rng), g(rng)}});
    const FourierData again = unmodify(modify(raw));
    for (std::size_t i = 0; i < raw.entries.size(); ++i) {
      CHECK(std::abs(again.entries[i].value - raw.entries[i].value) <= 2.3e-16 * std::abs(raw.entries[i].value));
    }
    CHECK_THROWS_AS(modify(FourierData{1.0, {{0, {1.0, 0.0}}}, {}}), std::invalid_argument);
  }
}
