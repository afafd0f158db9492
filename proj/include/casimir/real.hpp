#pragma once

// Working-precision real types shared by every numerical module.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <limits>

namespace casimir {

/// 113-bit significand (33-34 significant decimal digits), backed by libquadmath.
using quad = boost::multiprecision::float128;

/// Selects the arithmetic of the extended-precision paths.
enum class Precision { Double, Quad };

template <class Real>
inline Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
inline Real ln_two() {
  return boost::math::constants::ln_two<Real>();
}

template <class Real>
inline Real machine_epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
inline bool is_finite(const Real& x) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(x);
}

/// Neumaier-compensated running sum; summation order fixes the result bit for bit.
template <class Real>
class CompensatedSum {
 public:
  void add(const Real& x) {
    using std::abs;
    const Real t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + carry_; }

 private:
  Real sum_{0};
  Real carry_{0};
};

}  // namespace casimir
