#pragma once

// The Lifshitz integrand x ln(1 - r^2 e^{-x}) on the reduced variable
// x = 2 kappa a, for a plate with permittivity eps = 1 + em1 at the current
// Matsubara frequency and x0 = 2 a zeta (so q = zeta/kappa = x0/x).

#include "casimir/real.hpp"

#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/log1p.hpp>

#include <cmath>
#include <cstddef>

namespace casimir::kernels {

enum class Mode : int { TE = 0, TM = 1 };

/// r^2 and 1 - r^2 at q^2 = (x0/x)^2, both without cancellation.
template <class Real>
inline void reflection_squared(Mode mode, const Real& em1, const Real& q2, Real& r2, Real& one_minus_r2) {
  using std::sqrt;
  const Real a = em1 * q2;
  const Real s = sqrt(1 + a);
  if (mode == Mode::TE) {
    const Real d = (1 + s) * (1 + s);
    const Real r = a / d;
    r2 = r * r;
    one_minus_r2 = 4 * s / d;
  } else {
    const Real eps = 1 + em1;
    const Real d = (eps + s) * (eps + s);
    const Real r = em1 * (2 + em1 - q2) / d;
    r2 = r * r;
    one_minus_r2 = 4 * eps * s / d;
  }
}

/// ln(1 - r2 e^{-x}) given 1 - r2 separately.
template <class Real>
inline Real log_attenuation(const Real& x, const Real& r2, const Real& one_minus_r2) {
  using std::exp;
  using std::log;
  const Real e = exp(-x);
  const Real p = r2 * e;
  if (p < Real(0.5)) return boost::math::log1p(-p);
  return log(-boost::math::expm1(-x) + e * one_minus_r2);
}

/// Integrand value x ln(1 - r^2 e^{-x}).
template <class Real>
inline Real integrand(Mode mode, const Real& em1, const Real& x0, const Real& x) {
  const Real q = x0 / x;
  Real r2, omr2;
  reflection_squared(mode, em1, Real(q * q), r2, omr2);
  return x * log_attenuation(x, r2, omr2);
}

/// Integrand with a frequency-independent r^2 (zero-frequency limits, ideal mirrors).
template <class Real>
inline Real integrand_fixed(const Real& r2, const Real& x) {
  return x * log_attenuation(x, r2, Real(1 - r2));
}

/// sum_i w[i] * integrand(x0 + y[i]) over a node batch.
using WeightedSumFn = double (*)(Mode mode, double em1, double x0, const double* y,
                                 const double* w, std::size_t n);

double weighted_sum_scalar(Mode mode, double em1, double x0, const double* y, const double* w,
                           std::size_t n);

#if defined(CASIMIR_HAVE_AVX2)
double weighted_sum_avx2(Mode mode, double em1, double x0, const double* y, const double* w,
                         std::size_t n);
#endif

enum class Isa { Scalar, Avx2 };

bool isa_available(Isa isa);
const char* isa_name(Isa isa);

/// Best ISA supported by the CPU, unless CASIMIR_ISA=scalar|avx2 overrides it.
Isa active_isa();

WeightedSumFn weighted_sum(Isa isa);
WeightedSumFn weighted_sum();

}  // namespace casimir::kernels
