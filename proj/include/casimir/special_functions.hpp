#pragma once

// Polylogarithms, the Riemann zeta function on the real line, Bernoulli
// numbers and the divergent-series machinery behind the constants Psi and Phi.
// Every numerical routine is instantiated for double and quad.

#include "casimir/quadrature.hpp"
#include "casimir/real.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <vector>

namespace casimir::special {

using rational = boost::multiprecision::cpp_rational;

/// Exact B_{2n} for n = 1..size().
class BernoulliTable {
 public:
  explicit BernoulliTable(int count);

  /// Shared read-only table with 80 entries.
  static const BernoulliTable& standard();

  int size() const { return static_cast<int>(values_.size()); }
  const rational& exact(int n) const;  // B_{2n}

  template <class Real>
  Real b2n(int n) const;

  /// Copy with B_{2n} replaced; used for fault-injection tests.
  BernoulliTable with_entry(int n, const rational& value) const;

 private:
  void convert();

  std::vector<rational> values_;
  std::vector<double> as_double_;
  std::vector<quad> as_quad_;
};

/// Li_n(x) for real |x| <= 1. n <= 1 uses closed forms and has a pole at x = 1.
template <class Real>
Real polylog(int n, const Real& x);

/// zeta(s) for real s != 1, by Euler-Maclaurin with analytic continuation.
template <class Real>
Real riemann_zeta(const Real& s);

/// d zeta / ds.
template <class Real>
Real zeta_derivative(const Real& s);

template <class Real>
struct SeriesSum {
  Real value{0};
  Real error{0};
  int order{0};
  int terms_used{0};
  bool converged{false};
};

/// Levin u-transform (beta = 1) of the series sum_k terms[k]. Orders grow
/// until two successive estimates agree to 1e-11 or order 30 is reached;
/// otherwise the best estimate comes back with converged = false.
template <class Real>
SeriesSum<Real> levin_u_sum(std::span<const Real> terms);

/// The t^-4 e^-t weighted Borel integrand for Psi-tilde, with the small-t
/// bracket taken from its Taylor series.
template <class Real>
Real borel_integrand(const Real& t);

/// Psi-tilde = integral_0^inf borel_integrand(t) dt.
template <class Real>
quadrature::Result<Real> borel_sum_psi_tilde();

/// Psi = zeta(3) / (4 pi^2).
template <class Real>
Real psi_constant();

/// Phi = zeta(-3/2).
template <class Real>
Real phi_constant();

enum class TermKind { HalfPower, LogPower };

/// Description of the Bernoulli-weighted derivative series defining Phi
/// (HalfPower, m^{3/2}) or Psi (LogPower, m^2 ln m).
struct DivergentSeriesSpec {
  TermKind term_kind;
};

/// phi_{2n} or psi_{2n}: the (2n-1)-th derivative at m = 1, n >= 2.
template <class Real>
Real derivative_weight(TermKind kind, int n);

/// Leading term (-1/40 or 1/36) followed by -B_{2n} w_{2n} / (2n)! for n = 2, 3, ...
template <class Real>
std::vector<Real> divergent_series_terms(const DivergentSeriesSpec& spec, int count,
                                         const BernoulliTable& table = BernoulliTable::standard());

}  // namespace casimir::special
