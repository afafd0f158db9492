#pragma once

// Internal unit system: hbar = c = k_B = 1 with time measured in seconds.
// Frequencies and temperatures are in 1/s, lengths in s, free energies per
// unit area in 1/s^3. SI values only appear at the API boundaries below.

namespace casimir::units {

struct PhysicalConstants {
  double hbar;         // J s
  double c;            // m / s
  double k_B;          // J / K
  double epsilon0;     // F / m
  double hbar_c_eV_cm; // eV cm
};

/// CODATA 2018.
inline constexpr PhysicalConstants codata2018{
    1.054571817e-34, 299792458.0, 1.380649e-23, 8.8541878128e-12, 1.973269804e-5};

inline constexpr const PhysicalConstants& constants() { return codata2018; }

/// Gaussian 4*pi*sigma from the SI sigma/epsilon0; both in 1/s and numerically equal.
double sigma_si_to_reduced(double sigma_si_over_eps0);

/// t = 2 pi k_B T / (hbar 4 pi sigma): first Matsubara frequency over the conductivity scale.
double reduced_temperature(double temperature_K, double four_pi_sigma);

/// alpha = 2 a (4 pi sigma) / c.
double alpha_param(double separation_m, double four_pi_sigma);

double temperature_to_internal(double temperature_K);  // k_B T / hbar
double length_to_internal(double length_m);            // a / c
double energy_density_to_si(double internal);          // x hbar / c^2 -> J/m^2
double energy_density_to_internal(double joule_per_m2);
double entropy_density_to_si(double internal);         // x k_B / c^2 -> J/(K m^2)

}  // namespace casimir::units
