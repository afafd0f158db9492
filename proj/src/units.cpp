#include "casimir/units.hpp"

#include "casimir/errors.hpp"

#include <cmath>
#include <numbers>

namespace casimir::units {

double sigma_si_to_reduced(double sigma_si_over_eps0) {
  if (!(sigma_si_over_eps0 >= 0.0) || !std::isfinite(sigma_si_over_eps0)) {
    throw DomainError("conductivity must be finite and non-negative");
  }
  return sigma_si_over_eps0;
}

double reduced_temperature(double temperature_K, double four_pi_sigma) {
  if (!(temperature_K >= 0.0)) throw DomainError("temperature must be non-negative");
  if (four_pi_sigma == 0.0) throw DomainError("zero conductivity: t undefined");
  if (!(four_pi_sigma > 0.0)) throw DomainError("conductivity must be positive");
  return 2.0 * std::numbers::pi * temperature_to_internal(temperature_K) / four_pi_sigma;
}

double alpha_param(double separation_m, double four_pi_sigma) {
  if (!(separation_m > 0.0)) throw DomainError("separation must be positive");
  if (!(four_pi_sigma >= 0.0)) throw DomainError("conductivity must be non-negative");
  return 2.0 * length_to_internal(separation_m) * four_pi_sigma;
}

double temperature_to_internal(double temperature_K) {
  return temperature_K * constants().k_B / constants().hbar;
}

double length_to_internal(double length_m) { return length_m / constants().c; }

double energy_density_to_si(double internal) {
  const auto& k = constants();
  return internal * k.hbar / (k.c * k.c);
}

double energy_density_to_internal(double joule_per_m2) {
  const auto& k = constants();
  return joule_per_m2 * (k.c * k.c) / k.hbar;
}

double entropy_density_to_si(double internal) {
  const auto& k = constants();
  return internal * k.k_B / (k.c * k.c);
}

}  // namespace casimir::units
