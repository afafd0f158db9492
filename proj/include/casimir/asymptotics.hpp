#pragma once

// Closed-form low-temperature expansions of the free-energy correction
// F(T) - F(0) for weakly conducting plates, built from the small-m behaviour
// of g(m) and the Euler-Maclaurin constants Psi and Phi.
//
// Reduced variables: t = 2 pi T / (4 pi sigma), alpha = 2 a (4 pi sigma), mu = m t.

#include <string>
#include <vector>

namespace casimir::asymptotics {

/// g(m) ~ c0 + c1 m + c_3_2 m^{3/2} + c_2l m^2 ln m + c2 m^2 as m -> 0.
struct SmallMExpansion {
  double c0 = 0;
  double c1 = 0;
  double c_3_2 = 0;
  double c_2l = 0;
  double c2 = 0;
};

/// Sum-minus-integral of g: -c1/12 + Psi c_2l + Phi c_3_2. c0 and c2 drop out.
double em_gamma(const SmallMExpansion& exp);

SmallMExpansion tm_small_m_expansion(double eps_bar, double t);
SmallMExpansion te_g1_expansion(double eps_bar, double t);
SmallMExpansion te_g2_expansion(double eps_bar, double t, double alpha);

enum class TermSource { TM_I, TM_delta, TE_I, TE_II, LinearAnomaly };

std::string term_source_name(TermSource source);

struct Rational {
  int num = 0;
  int den = 1;
  double value() const { return static_cast<double>(num) / den; }
};

struct AsymptoticTerm {
  Rational power_of_T;
  double coefficient = 0;  // J/m^2 per K^power
  TermSource source = TermSource::TM_I;
};

struct AsymptoticResult {
  std::vector<AsymptoticTerm> terms;
  double four_pi_sigma = 0;  // 1/s
  double alpha = 0;

  /// Sum of all terms at T (K), J/m^2.
  double evaluate(double T) const;
  /// Sum of the terms from one source.
  double evaluate(double T, TermSource source) const;
  /// Coefficient of T^(num/den) from the given source, 0 if absent.
  double coefficient(Rational power, TermSource source) const;
  /// Messages for expansion parameters outside t << 1, alpha << 1.
  std::vector<std::string> warnings(double T) const;
};

/// Leading and next-to-leading TM terms, -C T^2 (1 - C1 T).
AsymptoticResult tm_expansion(double sigma_si_over_eps0, double a);
double delta_f_tm(double sigma_si_over_eps0, double a, double T);

/// The alpha^2-order TM correction zeta(3) T^3 / (4 pi), J/m^2.
double delta_f_tm_correction(double T);
AsymptoticResult tm_correction_expansion();

/// (sigma a / c)^2 / 4: size of the correction relative to the TM T^3 term.
double tm_correction_ratio(double sigma_si_over_eps0, double a);

/// C2 T^2 - C_{5/2} T^{5/2} - zeta(3) T^3 / (8 pi).
AsymptoticResult te_expansion(double sigma_si_over_eps0, double a);
double delta_f_te(double sigma_si_over_eps0, double a, double T);

/// TE coefficients as positive magnitudes.
double te_c2(double sigma_si_over_eps0);
double te_c5_2(double sigma_si_over_eps0, double a);

struct AnomalyResult {
  double free_energy = 0;  // J/m^2
  double entropy = 0;      // J/(K m^2), -dF/dT, independent of T
  double linear_coefficient = 0;  // F / T, J/(K m^2)
};

/// Linear-in-T term of a non-conducting dielectric, (T / 16 pi a^2)[Li3(A0) - zeta(3)].
/// eps_bar may be +inf.
AnomalyResult linear_anomaly(double eps_bar, double a, double T);

/// Exact g_I of the TE mode at leading order in alpha.
double te_closed_form_g1(double mu, double eps_bar);

}  // namespace casimir::asymptotics
