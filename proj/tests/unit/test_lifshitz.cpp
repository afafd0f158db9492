#include "doctest.h"

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/special_functions.hpp"
#include "casimir/units.hpp"

#include <cmath>

using namespace casimir;
using namespace casimir::lifshitz;

namespace {

PlateSystem si(double T, Polarization pol = Polarization::Both) {
  PlateSystem s;
  s.temperature_T = T;
  s.polarization = pol;
  return s;
}

PlateSystem insulator(double T, double eps_bar, Polarization pol = Polarization::Both) {
  PlateSystem s = si(T, pol);
  s.material.eps_bar = eps_bar;
  s.material.four_pi_sigma = 0;
  return s;
}

PlateSystem ideal(double T) {
  PlateSystem s = si(T);
  s.material.mode = dielectric::ModelKind::PerfectConductor;
  return s;
}

double casimir_ideal(double a) {
  const auto& k = units::constants();
  return -M_PI * M_PI * k.hbar * k.c / (720 * a * a * a);
}

}  // namespace

TEST_CASE("polarization names") {
  CHECK(parse_polarization("tm") == Polarization::TM);
  CHECK(parse_polarization("TE") == Polarization::TE);
  CHECK(parse_polarization("both") == Polarization::Both);
  CHECK_THROWS_AS(parse_polarization("xy"), DomainError);
  for (auto p : {Polarization::TM, Polarization::TE, Polarization::Both}) {
    CHECK(parse_polarization(polarization_name(p)) == p);
  }
}

TEST_CASE("plate system validation") {
  PlateSystem s = si(1.0);
  s.separation_a = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = si(-1.0);
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = si(1.0);
  s.material.eps_bar = INFINITY;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS_AS(free_energy(si(0.0)), DomainError);
  CHECK_THROWS_AS(mode_integral(si(1.0), -1, Polarization::TM), DomainError);
  CHECK_THROWS_AS(mode_integral(si(1.0), 0, Polarization::Both), DomainError);
}

TEST_CASE("zero-frequency summands") {
  CHECK(mode_integral(si(1.0), 0, Polarization::TE).g_value == 0);
  const double z3 = special::riemann_zeta<double>(3.0);
  CHECK(mode_integral(si(1.0), 0, Polarization::TM).g_value == doctest::Approx(-z3).epsilon(1e-12));
  const double A0 = dielectric::a_mu(11.67, INFINITY);
  const double li3 = special::polylog<double>(3, A0);
  CHECK(mode_integral(insulator(1.0, 11.67), 0, Polarization::TM).g_value == doctest::Approx(-li3).epsilon(1e-12));
  CHECK(mode_integral(insulator(1.0, 11.67), 0, Polarization::TE).g_value == 0);
}

TEST_CASE("mode integral shapes") {
  const auto s = si(1.0);
  double prev_tm = -INFINITY;
  for (long long m : {1LL, 10LL, 100LL, 1000LL}) {
    const double tm = mode_integral(s, m, Polarization::TM).g_value;
    CHECK(tm < 0);
    CHECK(tm > prev_tm);
    prev_tm = tm;
  }
  // TE vanishes at m -> 0, peaks and then decays.
  const double te1 = mode_integral(s, 1, Polarization::TE).g_value;
  const double te10 = mode_integral(s, 10, Polarization::TE).g_value;
  const double te100 = mode_integral(s, 100, Polarization::TE).g_value;
  const double te1000 = mode_integral(s, 1000, Polarization::TE).g_value;
  CHECK(te1 < 0);
  CHECK(te1 > te10);
  CHECK(te10 > te100);
  CHECK(te1000 > te100);
  CHECK(te1000 > mode_integral(s, 1000, Polarization::TM).g_value);
}

TEST_CASE("free energy of Si at 1 um and 1 K against the reference Matsubara sum") {
  // Reference: tests/oracles/free_energy_oracle.py
  const auto r = free_energy(si(1.0));
  CHECK(r.tm == doctest::Approx(-1.076163173413e-10).epsilon(1e-9));
  CHECK(r.te == doctest::Approx(-2.333257216336e-11).epsilon(1e-9));
  CHECK(r.total == doctest::Approx(r.tm + r.te).epsilon(1e-15));
  CHECK(r.m_truncation > 1000);
  CHECK(r.est_error < 1e-8 * std::abs(r.total));

  const auto tm_only = free_energy(si(1.0, Polarization::TM));
  CHECK(tm_only.te == 0);
  CHECK(tm_only.total == doctest::Approx(r.tm).epsilon(1e-14));
}

TEST_CASE("ideal conductor limit") {
  const double a = 1e-6;
  CHECK(zero_temperature_energy(ideal(0.0)) == doctest::Approx(casimir_ideal(a)).epsilon(1e-6));
  CHECK(free_energy(ideal(1.0)).total == doctest::Approx(casimir_ideal(a)).epsilon(1e-6));
  auto s = ideal(0.0);
  s.separation_a = 3e-7;
  CHECK(zero_temperature_energy(s) == doctest::Approx(casimir_ideal(3e-7)).epsilon(1e-6));
}

TEST_CASE("no interaction without a dielectric contrast") {
  const auto s = insulator(1.0, 1.0);
  CHECK(free_energy(s).total == 0);
  CHECK(zero_temperature_energy(s) == 0);
}

TEST_CASE("magnitude decreases with separation") {
  double prev = -INFINITY;
  for (double a : {0.5e-6, 1e-6, 2e-6, 4e-6}) {
    auto s = si(0.0);
    s.separation_a = a;
    const double f = zero_temperature_energy(s);
    CHECK(f < 0);
    CHECK(f > prev);
    prev = f;
  }
  // Between the ideal-metal bound and zero.
  CHECK(zero_temperature_energy(si(0.0)) > casimir_ideal(1e-6));
}

TEST_CASE("nearly all of the zero-temperature TM energy comes from eps_bar") {
  const double with_sigma = zero_temperature_energies(si(0.0, Polarization::TM)).tm;
  const double without = zero_temperature_energies(insulator(0.0, 11.67, Polarization::TM)).tm;
  const double share = 100 * without / with_sigma;
  MESSAGE("eps_bar share of F_TM(0): " << share << " %");
  CHECK(share == doctest::Approx(99.7).epsilon(0.3 / 99.7));
}

TEST_CASE("free energy approaches the zero-temperature limit") {
  const double f0 = zero_temperature_energy(si(0.0));
  const double f = free_energy(si(0.05)).total;
  CHECK(f == doctest::Approx(f0).epsilon(1e-4));
}

TEST_CASE("temperature corrections have the expected signs") {
  const auto d = delta_f_direct(si(0.1), Precision::Double);
  CHECK(d.tm < 0);
  CHECK(d.te > 0);
  CHECK(d.tm_error < 1e-3 * std::abs(d.tm));
  CHECK(d.te_error < 1e-3 * std::abs(d.te));
}

TEST_CASE("double and quad temperature corrections agree") {
  const auto dd = delta_f_direct(si(0.05), Precision::Double);
  const auto dq = delta_f_direct(si(0.05), Precision::Quad);
  CHECK(dd.tm == doctest::Approx(dq.tm).epsilon(1e-8));
  CHECK(dd.te == doctest::Approx(dq.te).epsilon(1e-8));
  CHECK(dq.gamma_tm < 0);
}

TEST_CASE("TM correction against the reference at leading order in alpha") {
  // Reference: tests/oracles/free_energy_oracle.py, dF_TM with g = -Li3(A_mu).
  const auto d = delta_f_direct(si(0.02, Polarization::TM), Precision::Quad);
  CHECK(d.tm == doctest::Approx(-9.77238375673e-17).epsilon(1e-4));
  auto s1 = si(0.02, Polarization::TM);
  s1.material.eps_bar = 1.0;
  CHECK(delta_f_direct(s1, Precision::Double).tm == doctest::Approx(-9.83559759901e-17).epsilon(1e-4));
}

TEST_CASE("TM correction at 0.05 K is within 2% of the two-term asymptote" * doctest::may_fail()) {
  const double num = delta_f_direct(si(0.05, Polarization::TM), Precision::Double).tm;
  const double th = asymptotics::delta_f_tm(1e12, 1e-6, 0.05);
  MESSAGE("R(0.05 K) = " << (th - num) / th);
  CHECK(num == doctest::Approx(th).epsilon(0.02));
}
