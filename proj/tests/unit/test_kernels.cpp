#include "doctest.h"

#include "casimir/integrand.hpp"
#include "casimir/quadrature.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace casimir;
using namespace casimir::kernels;

namespace {

struct Batch {
  std::vector<double> y, w;
};

Batch random_batch(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ly(-12.0, 5.5), lw(-3.0, 1.0);
  Batch b;
  for (std::size_t i = 0; i < n; ++i) {
    b.y.push_back(std::pow(10.0, ly(rng)));
    b.w.push_back(std::pow(10.0, lw(rng)));
  }
  return b;
}

double reference_sum(Mode mode, double em1, double x0, const Batch& b) {
  double s = 0;
  for (std::size_t i = 0; i < b.y.size(); ++i) s += b.w[i] * integrand<double>(mode, em1, x0, x0 + b.y[i]);
  return s;
}

}  // namespace

TEST_CASE("integrand against direct Fresnel evaluation") {
  const double em1 = 10.67, x0 = 0.3, x = 1.7;
  const double q = x0 / x;
  const double eps = 1 + em1;
  const double k = std::sqrt(1 + em1 * q * q);
  const double r_tm = (eps - k) / (eps + k);
  const double r_te = (1 - k) / (1 + k);
  CHECK(integrand<double>(Mode::TM, em1, x0, x) ==
        doctest::Approx(x * std::log(1 - r_tm * r_tm * std::exp(-x))).epsilon(1e-14));
  CHECK(integrand<double>(Mode::TE, em1, x0, x) ==
        doctest::Approx(x * std::log(1 - r_te * r_te * std::exp(-x))).epsilon(1e-14));
  CHECK(integrand_fixed<double>(1.0, 2.0) == doctest::Approx(2 * std::log1p(-std::exp(-2.0))).epsilon(1e-15));
}

TEST_CASE("reflection_squared keeps 1 - r^2 accurate near perfect reflection") {
  double r2 = 0, omr2 = 0;
  reflection_squared<double>(Mode::TM, 1e20, 1e-30, r2, omr2);
  CHECK(omr2 > 0);
  CHECK(omr2 == doctest::Approx(4e-10).epsilon(1e-6));
  reflection_squared<double>(Mode::TE, 1e-3, 1.0, r2, omr2);
  CHECK(r2 + omr2 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("scalar kernel matches the templated integrand") {
  std::mt19937_64 rng(7);
  for (Mode mode : {Mode::TE, Mode::TM}) {
    for (double em1 : {1e-8, 10.67, 1e6, 1e40}) {
      for (double x0 : {0.0, 1e-9, 0.2, 30.0}) {
        const auto b = random_batch(rng, 37);
        const double got = weighted_sum_scalar(mode, em1, x0, b.y.data(), b.w.data(), b.y.size());
        CHECK(got == doctest::Approx(reference_sum(mode, em1, x0, b)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("AVX2 kernel is equivalent to the scalar kernel") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(11);
  for (Mode mode : {Mode::TE, Mode::TM}) {
    for (double em1 : {1e-8, 0.5, 10.67, 1e6, 1e40}) {
      for (double x0 : {0.0, 1e-9, 1e-3, 0.2, 5.0, 30.0}) {
        for (std::size_t n : {1u, 3u, 4u, 5u, 64u, 131u}) {
          const auto b = random_batch(rng, n);
          const double s = weighted_sum(Isa::Scalar)(mode, em1, x0, b.y.data(), b.w.data(), n);
          const double v = weighted_sum(Isa::Avx2)(mode, em1, x0, b.y.data(), b.w.data(), n);
          CHECK(v == doctest::Approx(s).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("kernels agree on a full exp-sinh level sweep") {
  const quadrature::ExpSinhTable<double> table(8, -4.0, 3.2);
  for (int l = 0; l <= table.max_level(); ++l) {
    const auto& lev = table.level(l);
    const std::size_t n = lev.offset.size();
    const double s = weighted_sum(Isa::Scalar)(Mode::TM, 10.67, 0.01, lev.offset.data(), lev.weight.data(), n);
    const double v = weighted_sum()(Mode::TM, 10.67, 0.01, lev.offset.data(), lev.weight.data(), n);
    CHECK(v == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("dispatch") {
  CHECK(isa_available(Isa::Scalar));
  CHECK(std::string(isa_name(Isa::Scalar)) == "scalar");
  CHECK(std::string(isa_name(Isa::Avx2)) == "avx2");
  CHECK(weighted_sum(Isa::Scalar) == &weighted_sum_scalar);
  const Isa active = active_isa();
  CHECK(isa_available(active));
  CHECK(weighted_sum() == weighted_sum(active));
}
