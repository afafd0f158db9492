#include "doctest.h"

#include "casimir/quadrature.hpp"
#include "casimir/real.hpp"

#include <cmath>
#include <vector>

using namespace casimir;
using namespace casimir::quadrature;

TEST_CASE("exp-sinh integrals on half lines") {
  const ExpSinhTable<double> table(8);
  const auto r1 = integrate_exp_sinh<double>(table, [](double x) { return std::exp(-x); }, 0.0, 1e-14);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-14));

  // int_0^inf x^2 e^{-x} dx = 2
  const auto r2 = integrate_exp_sinh<double>(table, [](double x) { return x * x * std::exp(-x); }, 0.0, 1e-14);
  CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-13));

  // int_a^inf e^{-x} dx = e^{-a}
  const auto r3 = integrate_exp_sinh<double>(table, [](double x) { return std::exp(-x); }, 3.0, 1e-14);
  CHECK(r3.value == doctest::Approx(std::exp(-3.0)).epsilon(1e-13));

  // int_0^inf x ln(1 - e^{-x}) dx = -zeta(3)
  const auto r4 = integrate_exp_sinh<double>(
      table, [](double x) { return x * std::log(-std::expm1(-x)); }, 0.0, 1e-14);
  CHECK(r4.value == doctest::Approx(-1.2020569031595942).epsilon(1e-13));
  CHECK(r4.error < 1e-12);
}

TEST_CASE("exp-sinh in quad precision") {
  const ExpSinhTable<quad> table(9, -4.8, 2.2);
  const auto r = integrate_exp_sinh<quad>(table, [](const quad& x) { return exp(-x); }, quad(0), quad(1e-30));
  CHECK(r.converged);
  CHECK(static_cast<double>(abs(r.value - 1)) < 1e-30);
}

TEST_CASE("tanh-sinh on finite intervals with endpoint singularities") {
  const TanhSinhTable<double> table(8);
  const auto r1 = integrate_tanh_sinh<double>(table, [](double x) { return x * x; }, 0.0, 3.0, 1e-14);
  CHECK(r1.value == doctest::Approx(9.0).epsilon(1e-14));
  // 1/sqrt(x) on [0, 1] gives 2.
  const auto r2 = integrate_tanh_sinh<double>(table, [](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, 1e-12);
  CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-11));
  // ln x on [0, 1] gives -1.
  const auto r3 = integrate_tanh_sinh<double>(table, [](double x) { return std::log(x); }, 0.0, 1.0, 1e-13);
  CHECK(r3.value == doctest::Approx(-1.0).epsilon(1e-12));
  const auto r4 = integrate_tanh_sinh<double>(table, [](double x) { return 1 / std::sqrt(x); }, 0.0, 4.0, 1e-12);
  CHECK(r4.value == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("batched tanh-sinh matches the pointwise rule") {
  const TanhSinhTable<double> table(7);
  auto f = [](double x) { return std::cos(x) * std::exp(-x); };
  const auto plain = integrate_tanh_sinh<double>(table, f, 0.0, 2.0, 1e-13);
  const auto batched = integrate_tanh_sinh_batched<double>(
      table,
      [&](std::span<const double> xs) {
        std::vector<double> out;
        for (double x : xs) out.push_back(f(x));
        return out;
      },
      0.0, 2.0, 1e-13);
  CHECK(batched.value == plain.value);
  CHECK(batched.evaluations == plain.evaluations);
}

TEST_CASE("refinement reports non-convergence at the level cap") {
  const ExpSinhTable<double> coarse(1);
  const auto r = integrate_exp_sinh<double>(coarse, [](double x) { return std::sin(x) * std::exp(-x / 50); },
                                            0.0, 1e-15);
  CHECK(!r.converged);
  CHECK(r.error > 0);
}

TEST_CASE("Chebyshev series interpolation and derivatives") {
  const double a = 0.5, b = 2.0;
  const auto x = ChebyshevSeries<double>::nodes(a, b, 24);
  std::vector<double> s;
  for (double xi : x) s.push_back(std::exp(xi));
  const ChebyshevSeries<double> series(s, a, b);
  for (double xv : {0.5, 0.8, 1.3, 2.0}) {
    CHECK(series(xv) == doctest::Approx(std::exp(xv)).epsilon(1e-14));
    CHECK(series.derivative(xv, 1) == doctest::Approx(std::exp(xv)).epsilon(1e-11));
    CHECK(series.derivative(xv, 2) == doctest::Approx(std::exp(xv)).epsilon(1e-9));
  }

  // A cubic is reproduced exactly, including its constant third derivative.
  std::vector<double> p;
  for (double xi : x) p.push_back(xi * xi * xi - 2 * xi);
  const ChebyshevSeries<double> cubic(p, a, b);
  CHECK(cubic.derivative(1.1, 3) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(cubic.derivative(1.1, 4) == doctest::Approx(0.0).epsilon(1e-6));
  for (std::size_t j = 4; j < cubic.coefficients().size(); ++j) {
    CHECK(std::abs(cubic.coefficients()[j]) < 1e-13);
  }
}

TEST_CASE("compensated summation") {
  CompensatedSum<double> s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}
