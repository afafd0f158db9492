#include "casimir/special_functions.hpp"

#include "casimir/errors.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <string>

namespace casimir::special {

namespace {

using boost::multiprecision::cpp_int;

std::vector<rational> even_bernoulli(int count) {
  // sum_{k=0}^{m} C(m+1, k) B_k = 0 with B_0 = 1, B_1 = -1/2 and vanishing odd B_k, k > 1.
  std::vector<rational> b(static_cast<std::size_t>(2 * count + 1));
  b[0] = 1;
  b[1] = rational(-1, 2);
  for (int m = 2; m <= 2 * count; m += 2) {
    cpp_int binom = 1;  // C(m+1, k)
    rational acc = 0;
    for (int k = 0; k < m; ++k) {
      if (k <= 1 || k % 2 == 0) acc += rational(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / (m + 1);
  }
  std::vector<rational> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) out.push_back(b[static_cast<std::size_t>(2 * n)]);
  return out;
}

template <class Real>
Real to_real(const rational& r) {
  using wide = boost::multiprecision::cpp_bin_float_50;
  const wide v = wide(numerator(r)) / wide(denominator(r));
  if constexpr (std::is_same_v<Real, double>) {
    return static_cast<double>(v);
  } else {
    return Real(v.str(40, std::ios_base::scientific));
  }
}

template <class Real>
Real factorial(int n) {
  Real f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

template <class Real>
Real harmonic(int n) {
  Real h = 0;
  for (int k = 1; k <= n; ++k) h += Real(1) / Real(k);
  return h;
}

/// zeta at integers, using exact Bernoulli values for k <= 0.
template <class Real>
Real zeta_at_integer(int k) {
  if (k == 1) throw PoleError("zeta has a pole at s = 1");
  if (k == 0) return Real(-0.5);
  const auto& table = BernoulliTable::standard();
  if (k < 0) {
    const int j = -k;
    if (j % 2 == 0) return Real(0);
    const int n = (j + 1) / 2;
    if (n > table.size()) throw DomainError("zeta: argument beyond Bernoulli table");
    return -table.b2n<Real>(n) / Real(j + 1);
  }
  static const std::array<Real, 64> cache = [] {
    std::array<Real, 64> c{};
    for (int i = 2; i < 64; ++i) c[static_cast<std::size_t>(i)] = riemann_zeta<Real>(Real(i));
    return c;
  }();
  if (k < 64) return cache[static_cast<std::size_t>(k)];
  return riemann_zeta<Real>(Real(k));
}

/// Li_n for n <= 1, |x| <= 1, x != 1.
template <class Real>
Real polylog_closed_form(int n, const Real& x) {
  if (n == 1) return -boost::math::log1p(-x);
  if (n == 0) return x / (1 - x);
  // Li_{-k}(x) = x sum_j A(k, j) x^j / (1 - x)^{k+1}, A the Eulerian numbers.
  const int k = -n;
  std::vector<Real> eul{Real(1)};
  for (int r = 2; r <= k; ++r) {
    std::vector<Real> next(static_cast<std::size_t>(r), Real(0));
    for (int j = 0; j < r; ++j) {
      const Real keep = j < r - 1 ? Real(j + 1) * eul[static_cast<std::size_t>(j)] : Real(0);
      const Real shift = j > 0 ? Real(r - j) * eul[static_cast<std::size_t>(j - 1)] : Real(0);
      next[static_cast<std::size_t>(j)] = keep + shift;
    }
    eul = std::move(next);
  }
  Real poly = 0;
  for (std::size_t j = eul.size(); j-- > 0;) poly = poly * x + eul[j];
  using std::pow;
  return x * poly / pow(1 - x, k + 1);
}

template <class Real>
Real polylog_series(int n, const Real& x) {
  using std::abs;
  using std::pow;
  Real sum = 0;
  Real xk = 1;
  for (int k = 1; k < 100000; ++k) {
    xk *= x;
    const Real term = xk / pow(Real(k), n);
    sum += term;
    if (abs(term) <= machine_epsilon<Real>() * abs(sum) / 4) break;
  }
  return sum;
}

/// Li_n(e^w) for w < 0 small, n >= 2, from the expansion about w = 0.
template <class Real>
Real polylog_log_series(int n, const Real& w) {
  using std::abs;
  using std::log;
  Real sum = 0;
  Real wk = 1;  // w^k / k!
  int quiet = 0;
  const int kmax = 2 * BernoulliTable::standard().size() - 2;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) wk *= w / Real(k);
    Real term;
    if (k == n - 1) {
      term = wk * (harmonic<Real>(n - 1) - log(-w));
    } else {
      term = zeta_at_integer<Real>(n - k) * wk;
    }
    sum += term;
    if (k > n + 1 && term != Real(0)) {
      quiet = abs(term) <= machine_epsilon<Real>() * abs(sum) / 4 ? quiet + 1 : 0;
      if (quiet >= 2) break;
    }
  }
  return sum;
}

template <class Real>
Real euler_maclaurin_zeta(const Real& s, bool derivative) {
  using std::abs;
  using std::ceil;
  using std::log;
  using std::pow;
  const auto& table = BernoulliTable::standard();
  int N = 20;
  if (s < 0) N += static_cast<int>(ceil(-s));
  CompensatedSum<Real> sum;
  for (int k = 2; k < N; ++k) {
    const Real p = pow(Real(k), -s);
    sum.add(derivative ? Real(-log(Real(k)) * p) : p);
  }
  if (!derivative) sum.add(Real(1));
  const Real n = N;
  const Real ln_n = log(n);
  const Real n_pow = pow(n, -s);  // N^{-s}
  if (derivative) {
    sum.add(-ln_n * n * n_pow / (s - 1) - n * n_pow / ((s - 1) * (s - 1)));
    sum.add(-ln_n * n_pow / 2);
  } else {
    sum.add(n * n_pow / (s - 1));
    sum.add(n_pow / 2);
  }
  // B_{2j}/(2j)! * P_j(s) * N^{-s-2j+1}, P_j = s (s+1) ... (s+2j-2).
  Real P = s;
  Real dP = 1;
  Real npow = n_pow / n;  // N^{-s-1}
  Real fact = 2;          // (2j)!
  int quiet = 0;
  for (int j = 1; j <= table.size(); ++j) {
    if (j > 1) {
      for (int i = 2 * j - 3; i <= 2 * j - 2; ++i) {
        dP = dP * (s + i) + P;
        P *= (s + i);
      }
      fact *= Real(2 * j - 1) * Real(2 * j);
      npow /= n * n;
    }
    const Real c = table.b2n<Real>(j) / fact;
    const Real term = derivative ? c * (dP - ln_n * P) * npow : c * P * npow;
    sum.add(term);
    const Real total = abs(sum.value());
    if (abs(term) <= machine_epsilon<Real>() * total / 4) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return sum.value();
}

}  // namespace

BernoulliTable::BernoulliTable(int count) : values_(even_bernoulli(count)) { convert(); }

void BernoulliTable::convert() {
  as_double_.clear();
  as_quad_.clear();
  for (const auto& v : values_) {
    as_double_.push_back(to_real<double>(v));
    as_quad_.push_back(to_real<quad>(v));
  }
}

const BernoulliTable& BernoulliTable::standard() {
  static const BernoulliTable table(80);
  return table;
}

const rational& BernoulliTable::exact(int n) const {
  if (n < 1 || n > size()) throw DomainError("Bernoulli index out of range: " + std::to_string(n));
  return values_[static_cast<std::size_t>(n - 1)];
}

template <class Real>
Real BernoulliTable::b2n(int n) const {
  if (n < 1 || n > size()) throw DomainError("Bernoulli index out of range: " + std::to_string(n));
  if constexpr (std::is_same_v<Real, double>) {
    return as_double_[static_cast<std::size_t>(n - 1)];
  } else {
    return as_quad_[static_cast<std::size_t>(n - 1)];
  }
}

BernoulliTable BernoulliTable::with_entry(int n, const rational& value) const {
  BernoulliTable copy = *this;
  if (n < 1 || n > size()) throw DomainError("Bernoulli index out of range: " + std::to_string(n));
  copy.values_[static_cast<std::size_t>(n - 1)] = value;
  copy.convert();
  return copy;
}

template <class Real>
Real polylog(int n, const Real& x) {
  using std::abs;
  using std::log;
  using std::pow;
  if (!is_finite(x) || abs(x) > 1) throw DomainError("polylog: |x| must not exceed 1");
  if (x == 1) {
    if (n <= 1) throw PoleError("polylog: Li_n(1) diverges for n <= 1");
    return zeta_at_integer<Real>(n);
  }
  if (n <= 1) return polylog_closed_form(n, x);
  if (x == 0) return Real(0);
  if (abs(x) <= Real(0.5)) return polylog_series(n, x);
  if (x > 0) return polylog_log_series(n, Real(log(x)));
  // Li_n(x) + Li_n(-x) = 2^{1-n} Li_n(x^2)
  return pow(Real(2), 1 - n) * polylog(n, Real(x * x)) - polylog(n, Real(-x));
}

/// zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s) for s < 0, or its derivative.
template <class Real>
Real reflected_zeta(const Real& s, bool derivative) {
  using std::cos;
  using std::log;
  using std::pow;
  using std::sin;
  const Real p = pi<Real>();
  const Real u = 1 - s;
  const Real half = p * s / 2;
  // sin and cos at multiples of pi/2 are set exactly so that trivial zeros stay zero.
  Real sn = sin(half), cs = cos(half);
  using std::floor;
  if (s == floor(s)) {
    const long long k = static_cast<long long>(s);
    if (k % 2 == 0) {
      sn = 0;
      cs = (k / 2) % 2 == 0 ? 1 : -1;
    } else {
      cs = 0;
      sn = ((k - 1) / 2) % 2 == 0 ? 1 : -1;
    }
  }
  const Real pre = pow(Real(2), s) * pow(p, s - 1) * boost::math::tgamma(u);
  const Real z = euler_maclaurin_zeta(u, false);
  if (!derivative) return pre * sn * z;
  const Real dz = euler_maclaurin_zeta(u, true);
  return pre * (sn * z * (log(2 * p) - boost::math::digamma(u)) + p / 2 * cs * z - sn * dz);
}

template <class Real>
Real riemann_zeta(const Real& s) {
  if (!is_finite(s)) throw DomainError("zeta: non-finite argument");
  if (s == 1) throw PoleError("zeta has a pole at s = 1");
  if (s < -1) return reflected_zeta(s, false);
  return euler_maclaurin_zeta(s, false);
}

template <class Real>
Real zeta_derivative(const Real& s) {
  if (!is_finite(s)) throw DomainError("zeta: non-finite argument");
  if (s == 1) throw PoleError("zeta has a pole at s = 1");
  if (s < -1) return reflected_zeta(s, true);
  return euler_maclaurin_zeta(s, true);
}

template <class Real>
SeriesSum<Real> levin_u_sum(std::span<const Real> terms) {
  using std::abs;
  using std::pow;
  if (terms.size() < 5) throw DomainError("levin_u_sum: at least 5 terms are required");
  for (const auto& a : terms) {
    if (!is_finite(a)) throw DomainError("levin_u_sum: non-finite term");
    if (a == 0) throw DomainError("levin_u_sum: zero term (remainder estimate undefined)");
  }
  const Real beta = 1;
  const std::size_t n = terms.size();
  std::vector<Real> partial(n), omega(n);
  Real s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    s += terms[j];
    partial[j] = s;
    omega[j] = (beta + Real(j)) * terms[j];
  }
  SeriesSum<Real> best;
  best.error = -1;
  Real previous = 0;
  const int max_order = std::min<int>(30, static_cast<int>(n) - 1);
  for (int k = 1; k <= max_order; ++k) {
    Real num = 0, den = 0;
    Real binom = 1;  // C(k, j)
    for (int j = 0; j <= k; ++j) {
      const Real ratio = pow((beta + Real(j)) / (beta + Real(k)), k - 1);
      const Real w = ((j % 2) ? -binom : binom) * ratio / omega[static_cast<std::size_t>(j)];
      num += w * partial[static_cast<std::size_t>(j)];
      den += w;
      binom = binom * Real(k - j) / Real(j + 1);
    }
    const Real estimate = num / den;
    if (k > 1) {
      const Real diff = abs(estimate - previous);
      if (best.error < 0 || diff < best.error) {
        best.value = estimate;
        best.error = diff;
        best.order = k;
        best.terms_used = k + 1;
      }
      const Real scale = abs(estimate) > 1 ? abs(estimate) : Real(1);
      if (k + 1 >= 5 && diff <= Real(1e-11) * scale) {
        best.value = estimate;
        best.error = diff;
        best.order = k;
        best.terms_used = k + 1;
        best.converged = true;
        return best;
      }
    }
    previous = estimate;
  }
  return best;
}

template <class Real>
Real borel_integrand(const Real& t) {
  using std::exp;
  if (t < 0) throw DomainError("borel_integrand: t must be non-negative");
  const Real damping = exp(-t);
  if (t < Real(0.1)) {
    // bracket / t^4 = sum_{j>=2} B_{2j} t^{2j-4} / (2j)!
    const auto& table = BernoulliTable::standard();
    const Real t2 = t * t;
    Real sum = 0;
    Real fact = 24;
    Real tp = 1;
    for (int j = 2; j < 10; ++j) {
      if (j > 2) {
        fact *= Real(2 * j - 1) * Real(2 * j);
        tp *= t2;
      }
      sum += table.b2n<Real>(j) * tp / fact;
    }
    return damping * sum;
  }
  const Real bracket = t / boost::math::expm1(t) - 1 + t / 2 - t * t / 12;
  const Real t2 = t * t;
  return damping * bracket / (t2 * t2);
}

template <class Real>
quadrature::Result<Real> borel_sum_psi_tilde() {
  static const quadrature::ExpSinhTable<Real> table(9);
  const Real tol = std::is_same_v<Real, double> ? Real(1e-15) : Real(1e-30);
  auto r = quadrature::integrate_exp_sinh<Real>(
      table, [](const Real& t) { return borel_integrand<Real>(t); }, Real(0), tol);
  if (!r.converged) {
    throw NumericalError("Borel integral did not converge", static_cast<double>(r.value),
                         static_cast<double>(r.error));
  }
  return r;
}

template <class Real>
Real psi_constant() {
  const Real p = pi<Real>();
  return zeta_at_integer<Real>(3) / (4 * p * p);
}

template <class Real>
Real phi_constant() {
  return riemann_zeta<Real>(Real(-1.5));
}

template <class Real>
Real derivative_weight(TermKind kind, int n) {
  using std::pow;
  if (n < 2) throw DomainError("derivative weights are defined for n >= 2");
  if (kind == TermKind::LogPower) return 2 * factorial<Real>(2 * n - 4);
  return -3 * factorial<Real>(4 * n - 7) / (pow(Real(2), 4 * n - 5) * factorial<Real>(2 * n - 4));
}

template <class Real>
std::vector<Real> divergent_series_terms(const DivergentSeriesSpec& spec, int count,
                                         const BernoulliTable& table) {
  if (count < 1) throw DomainError("divergent_series_terms: count must be positive");
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(spec.term_kind == TermKind::LogPower ? Real(1) / 36 : Real(-1) / 40);
  for (int n = 2; static_cast<int>(out.size()) < count; ++n) {
    out.push_back(-table.b2n<Real>(n) * derivative_weight<Real>(spec.term_kind, n) /
                  factorial<Real>(2 * n));
  }
  return out;
}

#define CASIMIR_INSTANTIATE(R)                                                            \
  template R BernoulliTable::b2n<R>(int) const;                                           \
  template R polylog<R>(int, const R&);                                                   \
  template R riemann_zeta<R>(const R&);                                                   \
  template R zeta_derivative<R>(const R&);                                                \
  template SeriesSum<R> levin_u_sum<R>(std::span<const R>);                               \
  template R borel_integrand<R>(const R&);                                                \
  template quadrature::Result<R> borel_sum_psi_tilde<R>();                                \
  template R psi_constant<R>();                                                           \
  template R phi_constant<R>();                                                           \
  template R derivative_weight<R>(TermKind, int);                                         \
  template std::vector<R> divergent_series_terms<R>(const DivergentSeriesSpec&, int,      \
                                                    const BernoulliTable&);

CASIMIR_INSTANTIATE(double)
CASIMIR_INSTANTIATE(quad)

#undef CASIMIR_INSTANTIATE

}  // namespace casimir::special
