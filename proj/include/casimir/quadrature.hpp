#pragma once

// Double-exponential quadrature with nested levels, and Chebyshev series.
//
// The rules are stored as flat node arrays per level so that hot loops can
// hand contiguous spans to the batched integrand kernels. Level l has step
// h = 2^-l; level 0 holds the integer nodes, level l > 0 the odd multiples
// of h. An estimate at level L is h_L * sum over levels 0..L.

#include "casimir/real.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace casimir::quadrature {

template <class Real>
struct Result {
  Real value{0};
  Real error{0};
  int evaluations{0};
  int level{0};
  bool converged{false};
};

/// Nodes of one refinement level.
template <class Real>
struct Level {
  std::vector<Real> offset;  // exp-sinh: x - a;  tanh-sinh: distance to nearer endpoint on [0, 1]
  std::vector<Real> weight;  // dx/dt, not yet multiplied by h
  std::vector<signed char> side;  // tanh-sinh only: -1 left endpoint, +1 right
};

/// exp-sinh rule for [a, inf): x = a + exp(pi/2 sinh t).
/// Integrands are expected to decay at least like exp(-x).
template <class Real>
class ExpSinhTable {
 public:
  explicit ExpSinhTable(int max_level, double t_lo = -4.8, double t_hi = 1.9) {
    using std::cosh;
    using std::exp;
    using std::sinh;
    const Real half_pi = pi<Real>() / 2;
    levels_.resize(static_cast<std::size_t>(max_level) + 1);
    for (int l = 0; l <= max_level; ++l) {
      const Real h = Real(1) / Real(1 << l);
      const long k_lo = static_cast<long>(std::floor(t_lo * (1 << l)));
      const long k_hi = static_cast<long>(std::ceil(t_hi * (1 << l)));
      auto& lev = levels_[static_cast<std::size_t>(l)];
      for (long k = k_lo; k <= k_hi; ++k) {
        if (l > 0 && (k % 2 == 0)) continue;
        const Real t = h * Real(k);
        const Real y = exp(half_pi * sinh(t));
        lev.offset.push_back(y);
        lev.weight.push_back(half_pi * cosh(t) * y);
      }
    }
  }

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const Level<Real>& level(int l) const { return levels_[static_cast<std::size_t>(l)]; }
  static Real step(int l) { return Real(1) / Real(1 << l); }

 private:
  std::vector<Level<Real>> levels_;
};

/// tanh-sinh rule for [a, b]: x = tanh(pi/2 sinh t) mapped affinely.
/// Endpoint distances are stored directly so nodes next to a singular
/// endpoint keep full relative precision.
template <class Real>
class TanhSinhTable {
 public:
  explicit TanhSinhTable(int max_level, double t_max = 4.1) {
    using std::cosh;
    using std::exp;
    using std::sinh;
    const Real half_pi = pi<Real>() / 2;
    levels_.resize(static_cast<std::size_t>(max_level) + 1);
    for (int l = 0; l <= max_level; ++l) {
      const Real h = Real(1) / Real(1 << l);
      const long k_max = static_cast<long>(std::ceil(t_max * (1 << l)));
      auto& lev = levels_[static_cast<std::size_t>(l)];
      for (long k = -k_max; k <= k_max; ++k) {
        if (l > 0 && (k % 2 == 0)) continue;
        const Real t = h * Real(k);
        const Real u = half_pi * sinh(t);
        const Real au = u < 0 ? Real(-u) : u;
        // 1 - tanh|u| = 2 / (exp(2|u|) + 1); node distance on [0, 1] is half of it.
        const Real dist = Real(1) / (exp(2 * au) + 1);
        const Real ch = cosh(u);
        // dx/dt on [0, 1] = (1/2) * (pi/2) cosh t / cosh^2 u
        lev.offset.push_back(dist);
        lev.weight.push_back(half_pi * cosh(t) / (2 * ch * ch));
        lev.side.push_back(k < 0 ? -1 : (k > 0 ? 1 : 0));
      }
    }
  }

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const Level<Real>& level(int l) const { return levels_[static_cast<std::size_t>(l)]; }
  static Real step(int l) { return Real(1) / Real(1 << l); }

  /// Abscissa of node i of level l on [a, b].
  Real abscissa(int l, std::size_t i, const Real& a, const Real& b) const {
    const auto& lev = level(l);
    const Real d = (b - a) * lev.offset[i];
    if (lev.side[i] < 0) return a + d;
    if (lev.side[i] > 0) return b - d;
    return (a + b) / 2;
  }

 private:
  std::vector<Level<Real>> levels_;
};

namespace detail {

/// Shared level-doubling driver. level_sum(l) returns sum_i w_i f(x_i) over
/// the nodes of level l (unscaled). DE error is roughly squared per level, so
/// the error of the level-L estimate is taken as diff^2 / |value|.
template <class Real, class LevelSum>
Result<Real> refine(LevelSum&& level_sum, int max_level, const Real& rel_tol,
                    int min_level, const Real& scale) {
  using std::abs;
  Result<Real> out;
  Real running = level_sum(0, out.evaluations);
  Real previous = running * scale;
  Real last_diff = -1;
  for (int l = 1; l <= max_level; ++l) {
    running += level_sum(l, out.evaluations);
    const Real h = Real(1) / Real(1 << l);
    const Real current = running * h * scale;
    const Real diff = abs(current - previous);
    const Real mag = abs(current);
    out.value = current;
    out.level = l;
    const Real floor_err = 8 * machine_epsilon<Real>() * mag;
    const Real err = (mag > 0) ? diff * diff / mag : diff;
    out.error = err > floor_err ? err : floor_err;
    const bool settling = last_diff < 0 || diff <= last_diff;
    if (l >= min_level && settling &&
        (diff <= floor_err || (diff <= Real(1e-3) * mag && err <= rel_tol * mag))) {
      out.converged = true;
      return out;
    }
    if (mag == 0 && diff == 0 && l >= min_level) {
      out.converged = true;
      return out;
    }
    last_diff = diff;
    previous = current;
  }
  out.error = out.error > 0 ? out.error : abs(out.value);
  return out;
}

}  // namespace detail

/// Adaptive (level-doubling) integral of f over [a, inf).
template <class Real, class F>
Result<Real> integrate_exp_sinh(const ExpSinhTable<Real>& table, F&& f, const Real& a,
                                const Real& rel_tol, int min_level = 3) {
  auto level_sum = [&](int l, int& evals) {
    const auto& lev = table.level(l);
    CompensatedSum<Real> s;
    for (std::size_t i = 0; i < lev.offset.size(); ++i) {
      s.add(lev.weight[i] * f(a + lev.offset[i]));
    }
    evals += static_cast<int>(lev.offset.size());
    return s.value();
  };
  return detail::refine<Real>(level_sum, table.max_level(), rel_tol, min_level, Real(1));
}

/// Adaptive integral of f over [a, b]. f is called with the abscissa.
template <class Real, class F>
Result<Real> integrate_tanh_sinh(const TanhSinhTable<Real>& table, F&& f, const Real& a,
                                 const Real& b, const Real& rel_tol, int min_level = 3) {
  auto level_sum = [&](int l, int& evals) {
    const auto& lev = table.level(l);
    CompensatedSum<Real> s;
    for (std::size_t i = 0; i < lev.offset.size(); ++i) {
      s.add(lev.weight[i] * f(table.abscissa(l, i, a, b)));
    }
    evals += static_cast<int>(lev.offset.size());
    return s.value();
  };
  return detail::refine<Real>(level_sum, table.max_level(), rel_tol, min_level, Real(b - a));
}

/// As integrate_tanh_sinh, but each level's abscissae are handed to
/// batch(xs) -> values at once so the caller can evaluate them in parallel.
template <class Real, class Batch>
Result<Real> integrate_tanh_sinh_batched(const TanhSinhTable<Real>& table, Batch&& batch,
                                         const Real& a, const Real& b, const Real& rel_tol,
                                         int min_level = 3) {
  auto level_sum = [&](int l, int& evals) {
    const auto& lev = table.level(l);
    std::vector<Real> xs(lev.offset.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = table.abscissa(l, i, a, b);
    const std::vector<Real> fx = batch(std::span<const Real>(xs));
    CompensatedSum<Real> s;
    for (std::size_t i = 0; i < xs.size(); ++i) s.add(lev.weight[i] * fx[i]);
    evals += static_cast<int>(xs.size());
    return s.value();
  };
  return detail::refine<Real>(level_sum, table.max_level(), rel_tol, min_level, Real(b - a));
}

/// Chebyshev series on [a, b] built from samples at first-kind nodes.
template <class Real>
class ChebyshevSeries {
 public:
  /// The n first-kind Chebyshev points of [a, b], in sampling order.
  static std::vector<Real> nodes(const Real& a, const Real& b, int n) {
    using std::cos;
    std::vector<Real> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const Real u = cos(pi<Real>() * (Real(k) + Real(0.5)) / Real(n));
      x[static_cast<std::size_t>(k)] = (a + b) / 2 + (b - a) / 2 * u;
    }
    return x;
  }

  ChebyshevSeries(std::span<const Real> samples, const Real& a, const Real& b) : a_(a), b_(b) {
    using std::cos;
    const std::size_t n = samples.size();
    coeffs_.assign(n, Real(0));
    for (std::size_t j = 0; j < n; ++j) {
      CompensatedSum<Real> s;
      for (std::size_t k = 0; k < n; ++k) {
        s.add(samples[k] * cos(pi<Real>() * Real(j) * (Real(k) + Real(0.5)) / Real(n)));
      }
      coeffs_[j] = 2 * s.value() / Real(n);
    }
    if (n > 0) coeffs_[0] /= 2;
  }

  const std::vector<Real>& coefficients() const { return coeffs_; }

  Real operator()(const Real& x) const { return clenshaw(coeffs_, map(x)); }

  /// d^order/dx^order of the series at x.
  Real derivative(const Real& x, int order) const {
    std::vector<Real> c = coeffs_;
    Real scale = 1;
    for (int k = 0; k < order; ++k) {
      c = differentiate(c);
      scale *= Real(2) / (b_ - a_);
    }
    return scale * clenshaw(c, map(x));
  }

 private:
  Real map(const Real& x) const { return (2 * x - a_ - b_) / (b_ - a_); }

  static std::vector<Real> differentiate(const std::vector<Real>& c) {
    const std::size_t n = c.size();
    if (n <= 1) return {Real(0)};
    std::vector<Real> d(n - 1, Real(0));
    // d_{j-1} = d_{j+1} + 2 j c_j, with the j = 0 term halved afterwards.
    for (std::size_t j = n - 1; j >= 1; --j) {
      const Real next = (j + 1 < n - 1) ? d[j + 1] : Real(0);
      d[j - 1] = next + 2 * Real(j) * c[j];
    }
    d[0] /= 2;
    return d;
  }

  static Real clenshaw(const std::vector<Real>& c, const Real& u) {
    Real b1 = 0, b2 = 0;
    for (std::size_t j = c.size(); j-- > 1;) {
      const Real b0 = 2 * u * b1 - b2 + c[j];
      b2 = b1;
      b1 = b0;
    }
    return u * b1 - b2 + (c.empty() ? Real(0) : c[0]);
  }

  Real a_, b_;
  std::vector<Real> coeffs_;
};

}  // namespace casimir::quadrature
