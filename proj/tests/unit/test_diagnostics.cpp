#include "doctest.h"

#include "casimir/asymptotics.hpp"
#include "casimir/diagnostics.hpp"
#include "casimir/errors.hpp"

#include <cmath>
#include <cstring>
#include <vector>

using namespace casimir;
using namespace casimir::diagnostics;

namespace {

struct Model {
  double D, D1, D2;
  double operator()(double T) const { return -D * T * T * (1 - D1 * T + D2 * T * T); }
};

std::vector<double> sample(const std::vector<double>& T, const TemperatureFunction& f) {
  std::vector<double> out;
  for (double t : T) out.push_back(f(t));
  return out;
}

}  // namespace

TEST_CASE("logarithmic grids") {
  const auto g = log_grid(0.02, 1.0, 25);
  CHECK(g.size() == 43);
  CHECK(g.front() == 0.02);
  CHECK(g.back() == 1.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(g[i] / g[i - 1] == doctest::Approx(std::pow(50.0, 1.0 / 42)).epsilon(1e-12));
  }
  CHECK(log_grid(0.5, 0.5, 25).size() == 1);
  CHECK(default_grid(Polarization::TM).front() == 0.02);
  CHECK(default_grid(Polarization::TE).back() == 2.0);
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 25), DomainError);
  CHECK_THROWS_AS(log_grid(1.0, 0.5, 25), DomainError);
  CHECK_THROWS_AS(log_grid(0.1, 1.0, 0), DomainError);
}

TEST_CASE("fit recovers the coefficients of synthetic data") {
  const Model m{2.4777e-13, 0.365, -2.0};
  const auto T = log_grid(0.02, 0.3, 25);
  const auto f = fit_expansion(T, sample(T, m));
  CHECK(f.D == doctest::Approx(m.D).epsilon(1e-6));
  CHECK(f.D1 == doctest::Approx(m.D1).epsilon(1e-6));
  CHECK(f.D2 == doctest::Approx(m.D2).epsilon(1e-6));
  CHECK(f.T_range[0] == 0.02);
  CHECK(f.T_range[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(f.condition_number > 1);
  CHECK(f.condition_number < 1e10);
  CHECK(std::abs(f.covariance[0][0]) < 1e-6 * m.D * m.D);

  // Positive corrections give a negative D.
  const Model te{-1.6e-19, 0.5, 0.1};
  const auto T2 = log_grid(0.1, 1.0, 25);
  const auto g = fit_expansion(T2, sample(T2, te));
  CHECK(g.D == doctest::Approx(te.D).epsilon(1e-6));
  CHECK(g.D1 == doctest::Approx(te.D1).epsilon(1e-6));
}

TEST_CASE("fit is invariant under rescaling of the data") {
  const Model m{2.4777e-13, 0.365, 1.5};
  const auto T = log_grid(0.02, 0.3, 25);
  const auto base = fit_expansion(T, sample(T, m));
  auto scaled = sample(T, m);
  for (double& v : scaled) v *= 1e10;
  const auto f = fit_expansion(T, scaled);
  CHECK(f.D == doctest::Approx(1e10 * base.D).epsilon(1e-10));
  CHECK(f.D1 == doctest::Approx(base.D1).epsilon(1e-10));
  CHECK(f.D2 == doctest::Approx(base.D2).epsilon(1e-10));
}

TEST_CASE("fit is bit-for-bit deterministic") {
  const Model m{3e-13, 0.4, -1.0};
  const auto T = log_grid(0.02, 0.3, 25);
  auto dF = sample(T, m);
  for (std::size_t i = 0; i < dF.size(); ++i) dF[i] *= 1 + 1e-4 * std::sin(static_cast<double>(i));
  const auto a = fit_expansion(T, dF);
  const auto b = fit_expansion(T, dF);
  CHECK(std::memcmp(&a.D, &b.D, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.D1, &b.D1, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.D2, &b.D2, sizeof(double)) == 0);
  CHECK(a.covariance[1][1] > 0);
}

TEST_CASE("fit input validation") {
  const Model m{3e-13, 0.4, -1.0};
  const std::vector<double> few{0.02, 0.05, 0.1, 0.2, 0.3};
  CHECK_THROWS_AS(fit_expansion(few, sample(few, m)), DomainError);
  const auto narrow = log_grid(0.1, 0.5, 25);
  CHECK_THROWS_AS(fit_expansion(narrow, sample(narrow, m)), DomainError);
  const auto T = log_grid(0.02, 0.3, 25);
  auto mixed = sample(T, m);
  mixed[3] = -mixed[3];
  CHECK_THROWS_AS(fit_expansion(T, mixed), DomainError);
  auto zero = sample(T, m);
  zero[0] = 0;
  CHECK_THROWS_AS(fit_expansion(T, zero), DomainError);
  std::vector<double> shorter(T.begin(), T.end() - 1);
  CHECK_THROWS_AS(fit_expansion(shorter, sample(T, m)), DomainError);
}

TEST_CASE("R curve of identical numerics and theory is zero") {
  const Model m{2.4777e-13, 0.365, 0.0};
  const auto T = log_grid(0.02, 1.0, 25);
  const auto rec = r_curve(T, Polarization::TM, m, m, -1e-10);
  REQUIRE(rec.size() == T.size());
  for (const auto& r : rec) {
    CHECK(r.R == 0);
    CHECK(r.R_valid);
    CHECK(r.F_num == r.F_asym);
    CHECK(r.F_num == doctest::Approx(-1e-10 + r.dF_num).epsilon(1e-15));
    CHECK(r.pol == Polarization::TM);
  }
  CHECK(r_slope_at_start(rec) == 0);
}

TEST_CASE("R curve definition, invalid points and slope") {
  const std::vector<double> T{0.1, 0.2, 0.4};
  const auto rec = r_curve(T, Polarization::TE, [](double t) { return 2 * t * t * (1 - 2 * t); },
                           [](double t) { return 2 * t * t; });
  CHECK(rec[1].R == doctest::Approx(0.4).epsilon(1e-14));
  // R = 2 T exactly, so the quadratic through three points has slope 2.
  CHECK(r_slope_at_start(rec) == doctest::Approx(2.0).epsilon(1e-12));

  const auto zero = r_curve(T, Polarization::TM, [](double) { return 1.0; }, [](double) { return 0.0; });
  CHECK(!zero[0].R_valid);
  CHECK(std::isnan(zero[0].R));

  const std::vector<double> quadratic{0.1, 0.3, 0.4};
  const auto q = r_curve(quadratic, Polarization::TM, [](double t) { return 1 - t * t; }, [](double) { return 1.0; });
  CHECK(r_slope_at_start(q) == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(r_slope_at_start(std::span<const SweepRecord>(rec.data(), 2)), DomainError);
  const std::vector<double> empty;
  CHECK_THROWS_AS(r_curve(empty, Polarization::TM, [](double) { return 1.0; }, [](double) { return 1.0; }),
                  DomainError);
  const std::vector<double> descending{0.3, 0.2, 0.1};
  CHECK_THROWS_AS(r_curve(descending, Polarization::TM, [](double) { return 1.0; }, [](double) { return 1.0; }),
                  DomainError);
}

TEST_CASE("R curve of the Si plates at the lowest temperatures") {
  const lifshitz::PlateSystem si;
  const std::vector<double> T{0.02, 0.025, 0.03};
  const auto rec = r_curve(si, T, Polarization::TM, Precision::Double);
  for (const auto& r : rec) {
    CHECK(r.dF_num < 0);
    CHECK(r.dF_th < 0);
    CHECK(r.R > 0);
    CHECK(std::abs(r.R) < 0.05);
    CHECK(r.F_num - r.dF_num == doctest::Approx(r.F_asym - r.dF_th).epsilon(1e-15));
  }
  CHECK_THROWS_AS(r_curve(si, T, Polarization::Both, Precision::Double), DomainError);
  CHECK_THROWS_AS(theory_function(si, Polarization::Both), DomainError);
}

TEST_CASE("TE cube comparison recovers an injected cube term") {
  const double sigma = 1e12;
  const double C2 = asymptotics::te_c2(sigma);
  const double cube = asymptotics::te_expansion(sigma, 1e-6).coefficient({3, 1}, asymptotics::TermSource::TE_I);
  const auto T = log_grid(0.1, 2.0, 25);
  const auto c = te_cube_comparison(T, sigma, [&](double t) { return C2 * t * t + cube * t * t * t; });
  CHECK(c.same_order);
  CHECK(c.rows_checked > 0);
  for (const auto& row : c.rows) {
    CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(row.cube_abs == doctest::Approx(std::abs(cube) * row.T * row.T * row.T).epsilon(1e-14));
  }
  const auto off = te_cube_comparison(T, sigma, [&](double t) { return C2 * t * t + 10 * cube * t * t * t; });
  CHECK(!off.same_order);
  const auto flipped = te_cube_comparison(T, sigma, [&](double t) { return C2 * t * t - cube * t * t * t; });
  CHECK(!flipped.same_order);
  const std::vector<double> low{0.1, 0.2};
  CHECK(!te_cube_comparison(low, sigma, [&](double t) { return C2 * t * t + cube * t * t * t; }).same_order);
}
