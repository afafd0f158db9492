#include "casimir/asymptotics.hpp"

#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/real.hpp"
#include "casimir/special_functions.hpp"
#include "casimir/units.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace casimir::asymptotics {

namespace {

const double kPi = pi<double>();

double psi() { return special::psi_constant<double>(); }
double phi() { return special::phi_constant<double>(); }
double zeta3() { return special::riemann_zeta<double>(3.0); }

void check_separation(double a) {
  if (!(a > 0) || !std::isfinite(a)) throw DomainError("separation must be positive and finite");
}

/// Converts an internal-unit term evaluated at T = 1 K into its SI coefficient.
double si_coefficient(double internal_at_one_kelvin) {
  return units::energy_density_to_si(internal_at_one_kelvin);
}

/// t (4 pi sigma)^3 / (4 pi^2 alpha^2): TM normalization of g.
double tm_prefactor(double t, double four_pi_sigma, double alpha) {
  return t * four_pi_sigma * four_pi_sigma * four_pi_sigma / (4 * kPi * kPi * alpha * alpha);
}

/// t (4 pi sigma)^3 / (4 pi^2): TE normalization of g.
double te_prefactor(double t, double four_pi_sigma) {
  return t * four_pi_sigma * four_pi_sigma * four_pi_sigma / (4 * kPi * kPi);
}

}  // namespace

double em_gamma(const SmallMExpansion& exp) {
  return -exp.c1 / 12 + psi() * exp.c_2l + phi() * exp.c_3_2;
}

SmallMExpansion tm_small_m_expansion(double eps_bar, double t) {
  if (!(t > 0)) throw DomainError("t must be positive");
  if (!(eps_bar >= 1)) throw DomainError("eps_bar must be >= 1");
  SmallMExpansion e;
  e.c0 = -zeta3();
  e.c1 = 2 * kPi * kPi * t / 3;
  e.c_2l = 8 * t * t;
  e.c2 = -2 * t * t * (eps_bar * kPi * kPi / 3 + 4) + 8 * t * t * std::log(4 * t) - 4 * t * t;
  return e;
}

SmallMExpansion te_g1_expansion(double eps_bar, double t) {
  if (!(t > 0)) throw DomainError("t must be positive");
  if (!(eps_bar >= 1)) throw DomainError("eps_bar must be >= 1");
  const double k = 2 * ln_two<double>() - 1;
  SmallMExpansion e;
  e.c1 = -t * k / 4;
  e.c_2l = -t * t / 4;
  e.c2 = -t * t / 4 * (std::log(4 * t) + eps_bar * k);
  return e;
}

SmallMExpansion te_g2_expansion(double eps_bar, double t, double alpha) {
  if (!(t > 0)) throw DomainError("t must be positive");
  if (!(alpha >= 0)) throw DomainError("alpha must be >= 0");
  if (!(eps_bar >= 1)) throw DomainError("eps_bar must be >= 1");
  SmallMExpansion e;
  e.c_3_2 = alpha * std::pow(t, 1.5) / 12;
  return e;
}

std::string term_source_name(TermSource source) {
  switch (source) {
    case TermSource::TM_I: return "TM_I";
    case TermSource::TM_delta: return "TM_delta";
    case TermSource::TE_I: return "TE_I";
    case TermSource::TE_II: return "TE_II";
    case TermSource::LinearAnomaly: return "LinearAnomaly";
  }
  return "unknown";
}

double AsymptoticResult::evaluate(double T) const {
  if (!(T >= 0)) throw DomainError("temperature must be >= 0");
  double sum = 0;
  for (const auto& term : terms) sum += term.coefficient * std::pow(T, term.power_of_T.value());
  return sum;
}

double AsymptoticResult::evaluate(double T, TermSource source) const {
  if (!(T >= 0)) throw DomainError("temperature must be >= 0");
  double sum = 0;
  for (const auto& term : terms) {
    if (term.source == source) sum += term.coefficient * std::pow(T, term.power_of_T.value());
  }
  return sum;
}

double AsymptoticResult::coefficient(Rational power, TermSource source) const {
  for (const auto& term : terms) {
    if (term.source == source && term.power_of_T.num * power.den == power.num * term.power_of_T.den) {
      return term.coefficient;
    }
  }
  return 0;
}

std::vector<std::string> AsymptoticResult::warnings(double T) const {
  std::vector<std::string> out;
  if (four_pi_sigma > 0) {
    const double t = units::reduced_temperature(T, four_pi_sigma);
    if (t > 0.1) {
      std::ostringstream msg;
      msg << "t = " << t << " at T = " << T << " K exceeds 0.1; the expansion assumes t << 1";
      out.push_back(msg.str());
    }
  }
  if (alpha > 0.1) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " exceeds 0.1; the expansion assumes alpha << 1";
    out.push_back(msg.str());
  }
  return out;
}

AsymptoticResult tm_expansion(double sigma_si_over_eps0, double a) {
  const double s = units::sigma_si_to_reduced(sigma_si_over_eps0);
  if (!(s > 0)) throw DomainError("TM asymptotics require σ>0 (expression diverges)");
  check_separation(a);
  const double alpha = units::alpha_param(a, s);
  const double t1 = units::reduced_temperature(1.0, s);
  // eps_bar only reaches c2, which cancels; any admissible value gives the same terms.
  const SmallMExpansion e = tm_small_m_expansion(1.0, t1);
  const double pre = tm_prefactor(t1, s, alpha);
  AsymptoticResult r;
  r.four_pi_sigma = s;
  r.alpha = alpha;
  r.terms.push_back({{2, 1}, si_coefficient(pre * (-e.c1 / 12)), TermSource::TM_I});
  r.terms.push_back({{3, 1}, si_coefficient(pre * psi() * e.c_2l), TermSource::TM_I});
  return r;
}

double delta_f_tm(double sigma_si_over_eps0, double a, double T) {
  return tm_expansion(sigma_si_over_eps0, a).evaluate(T);
}

AsymptoticResult tm_correction_expansion() {
  const double T1 = units::temperature_to_internal(1.0);
  AsymptoticResult r;
  r.terms.push_back({{3, 1}, si_coefficient(zeta3() * T1 * T1 * T1 / (4 * kPi)), TermSource::TM_delta});
  return r;
}

double delta_f_tm_correction(double T) { return tm_correction_expansion().evaluate(T); }

double tm_correction_ratio(double sigma_si_over_eps0, double a) {
  check_separation(a);
  const double alpha = units::alpha_param(a, units::sigma_si_to_reduced(sigma_si_over_eps0));
  return alpha * alpha / 16;
}

AsymptoticResult te_expansion(double sigma_si_over_eps0, double a) {
  const double s = units::sigma_si_to_reduced(sigma_si_over_eps0);
  check_separation(a);
  const double T1 = units::temperature_to_internal(1.0);
  AsymptoticResult r;
  r.four_pi_sigma = s;
  r.alpha = units::alpha_param(a, s);
  double c2 = 0, c5_2 = 0;
  if (s > 0) {
    const double t1 = units::reduced_temperature(1.0, s);
    const SmallMExpansion g1 = te_g1_expansion(1.0, t1);
    const SmallMExpansion g2 = te_g2_expansion(1.0, t1, r.alpha);
    const double pre = te_prefactor(t1, s);
    c2 = si_coefficient(pre * (-g1.c1 / 12));
    c5_2 = si_coefficient(pre * phi() * g2.c_3_2);
  }
  // (4 pi sigma t)^3 = (2 pi T)^3, so the cube term survives sigma -> 0.
  const double two_pi_t = 2 * kPi * T1;
  const double cube = si_coefficient(-psi() * two_pi_t * two_pi_t * two_pi_t / (16 * kPi * kPi));
  r.terms.push_back({{2, 1}, c2, TermSource::TE_I});
  r.terms.push_back({{3, 1}, cube, TermSource::TE_I});
  r.terms.push_back({{5, 2}, c5_2, TermSource::TE_II});
  return r;
}

double delta_f_te(double sigma_si_over_eps0, double a, double T) {
  return te_expansion(sigma_si_over_eps0, a).evaluate(T);
}

double te_c2(double sigma_si_over_eps0) {
  return te_expansion(sigma_si_over_eps0, 1.0).coefficient({2, 1}, TermSource::TE_I);
}

double te_c5_2(double sigma_si_over_eps0, double a) {
  return -te_expansion(sigma_si_over_eps0, a).coefficient({5, 2}, TermSource::TE_II);
}

AnomalyResult linear_anomaly(double eps_bar, double a, double T) {
  if (!(eps_bar >= 1)) throw DomainError("eps_bar must be >= 1");
  check_separation(a);
  if (!(T >= 0)) throw DomainError("temperature must be >= 0");
  const double A0 = std::isinf(eps_bar) ? 1.0 : dielectric::a_mu(eps_bar, std::numeric_limits<double>::infinity());
  if (A0 == 1.0) return {};
  const double bracket = special::polylog<double>(3, A0) - zeta3();
  const double a_int = units::length_to_internal(a);
  const double slope = bracket / (16 * kPi * a_int * a_int);  // dF/dT in internal units
  AnomalyResult r;
  r.entropy = units::entropy_density_to_si(-slope);
  r.linear_coefficient = -r.entropy;
  r.free_energy = r.linear_coefficient * T;
  return r;
}

double te_closed_form_g1(double mu, double eps_bar) {
  if (!(mu >= 0)) throw DomainError("mu must be >= 0");
  if (!(eps_bar >= 1)) throw DomainError("eps_bar must be >= 1");
  if (mu == 0) return 0;
  const double chi2 = mu + (eps_bar - 1) * mu * mu;
  // With A = sqrt(eps_bar mu + 1), B = sqrt(mu): y0 = (A - B)/(A + B).
  const double A = std::sqrt(eps_bar * mu + 1);
  const double B = std::sqrt(mu);
  const double S = A + B;
  const double diff2 = (eps_bar - 1) * mu + 1;  // A^2 - B^2
  const double y0 = diff2 / (S * S);
  const double inv_plus = 2 * (eps_bar * mu + 1 + mu) / diff2;  // 1/y0 + y0
  const double log_one_minus_y2 = std::log(4 * A * B) - 2 * std::log(S);
  const double bracket = inv_plus * log_one_minus_y2 - 2 * y0 + 2 * std::log(A / B);
  return -chi2 / 8 * bracket;
}

}  // namespace casimir::asymptotics
