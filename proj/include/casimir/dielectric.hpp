#pragma once

// Permittivity on the imaginary frequency axis and the plate reflection
// coefficients. Frequencies are in 1/s.

#include <string>
#include <string_view>

namespace casimir::dielectric {

enum class ModelKind {
  FullOscillator,    // 1 + (eps_bar - 1) / (1 + zeta^2/omega0^2) + 4 pi sigma / zeta
  LowFreqApprox,     // eps_bar + 4 pi sigma / zeta
  PerfectConductor,  // r^2 = 1 for both polarizations at every frequency
};

struct DielectricModel {
  double eps_bar = 11.67;
  double omega0 = 8e15;         // 1/s
  double four_pi_sigma = 1e12;  // 1/s
  ModelKind mode = ModelKind::FullOscillator;

  /// Throws DomainError unless eps_bar >= 1, omega0 > 0 and 4 pi sigma >= 0.
  void validate() const;
  bool conducting() const { return four_pi_sigma > 0 || mode == ModelKind::PerfectConductor; }
};

/// Si: eps_bar = 11.67, omega0 = 8e15 1/s, sigma/eps0 = 1e12 1/s.
DielectricModel silicon();

struct ReflectionPair {
  double r_te = 0;
  double r_tm = 0;
};

/// epsilon(i zeta) - 1. Kept separate from permittivity() so that values close
/// to 1 keep their relative precision.
template <class Real>
Real eps_minus_one(const DielectricModel& model, const Real& zeta);

/// epsilon(i zeta). zeta = 0 is allowed only for sigma = 0.
template <class Real>
Real permittivity(const DielectricModel& model, const Real& zeta);

double permittivity(const DielectricModel& model, double zeta);

/// r_TE and r_TM at wavevector kappa >= zeta >= 0. eps may be +inf.
ReflectionPair reflection_coeffs(double eps, double kappa, double zeta);

/// ((1 + (eps_bar - 1) mu) / (1 + (eps_bar + 1) mu))^2; mu = +inf gives A_0.
double a_mu(double eps_bar, double mu);

/// (x - sqrt(x^2 + 1))^4, evaluated as (x + sqrt(x^2 + 1))^-4.
double b_coefficient(double x);

/// Sets one material key (eps_bar, omega0, sigma_over_eps0, model).
/// Returns false for an unknown key; throws DomainError for a bad value.
bool set_material_key(DielectricModel& model, std::string_view key, std::string_view value);

/// Parses "key = value" lines; '#' and ';' start comments.
DielectricModel parse_material(std::string_view text);

std::string model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

}  // namespace casimir::dielectric
