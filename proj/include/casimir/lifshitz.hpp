#pragma once

// Direct evaluation of the Lifshitz free energy between two identical plates:
// the per-mode kappa integrals, the Matsubara sum, its T -> 0 integral limit and
// the sum-minus-integral difference in extended precision.
//
// With x = 2 kappa a and x0 = 2 a zeta_m, each polarization contributes
//   F = T / (8 pi a^2) * sum'_m g(m),   g(m) = int_{x0}^inf x ln(1 - r^2 e^{-x}) dx.

#include "casimir/dielectric.hpp"
#include "casimir/integrand.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/real.hpp"

#include <string>

namespace casimir::lifshitz {

enum class Polarization { TM, TE, Both };

std::string polarization_name(Polarization pol);
Polarization parse_polarization(const std::string& name);

struct PlateSystem {
  double separation_a = 1e-6;  // m
  double temperature_T = 1.0;  // K
  dielectric::DielectricModel material = dielectric::silicon();
  Polarization polarization = Polarization::Both;

  void validate() const;
};

struct ModeSummand {
  long long m_index = 0;
  double g_value = 0;
  double quadrature_error = 0;
};

struct FreeEnergyResult {
  double total = 0;  // J/m^2
  double tm = 0;
  double te = 0;
  long long m_truncation = 0;
  double est_error = 0;
};

struct DeltaFResult {
  double tm = 0;  // J/m^2
  double te = 0;
  double tm_error = 0;
  double te_error = 0;
  double gamma_tm = 0;  // dimensionless sum-minus-integral of g
  double gamma_te = 0;
};

/// g(m) and the frequency dependence behind it, for real m >= 0.
template <class Real>
class ModeFunction {
 public:
  ModeFunction(const PlateSystem& system, const Real& rel_tol);

  /// g at a (possibly non-integer) Matsubara index.
  quadrature::Result<Real> g(const Real& m, kernels::Mode mode) const;

  /// The kappa integral for given x0 = 2 a zeta and eps(i zeta) - 1.
  quadrature::Result<Real> g_at(const Real& x0, const Real& em1, kernels::Mode mode) const;

  /// The kappa integral from x0 with a frequency-independent r^2.
  quadrature::Result<Real> g_fixed(const Real& r2, const Real& x0) const;

  Real x0(const Real& m) const { return two_a_ * zeta(m); }
  Real zeta(const Real& m) const { return 2 * pi<Real>() * m * temperature_; }
  Real eps_minus_one(const Real& m) const;

  /// r^2 at zero frequency for the given polarization.
  Real zero_frequency_r2(kernels::Mode mode) const;

  /// T / (8 pi a^2) in internal units (1/s^3).
  Real prefactor() const;

 private:
  PlateSystem system_;
  Real rel_tol_;
  Real temperature_;  // 1/s
  Real two_a_;        // s
};

/// g(m) at integer m with relative tolerance 1e-12; m = 0 uses the zero-frequency r^2.
ModeSummand mode_integral(const PlateSystem& system, long long m, Polarization pol);

/// Matsubara sum with geometric tail extrapolation.
FreeEnergyResult free_energy(const PlateSystem& system);

/// T = 0 limit (continuous frequency integral) for the selected polarizations, J/m^2.
double zero_temperature_energy(const PlateSystem& system);

/// Per-polarization T = 0 energies.
FreeEnergyResult zero_temperature_energies(const PlateSystem& system);

/// F(T) - F(0) from the sum-minus-integral of g evaluated on shared nodes.
DeltaFResult delta_f_direct(const PlateSystem& system, Precision precision = Precision::Quad);

}  // namespace casimir::lifshitz
