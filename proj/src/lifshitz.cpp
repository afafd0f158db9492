#include "casimir/lifshitz.hpp"

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/special_functions.hpp"
#include "casimir/units.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace casimir::lifshitz {

using kernels::Mode;

std::string polarization_name(Polarization pol) {
  switch (pol) {
    case Polarization::TM: return "TM";
    case Polarization::TE: return "TE";
    case Polarization::Both: return "both";
  }
  return "both";
}

Polarization parse_polarization(const std::string& name) {
  if (name == "tm" || name == "TM") return Polarization::TM;
  if (name == "te" || name == "TE") return Polarization::TE;
  if (name == "both" || name == "BOTH" || name == "Both") return Polarization::Both;
  throw DomainError("unknown polarization '" + name + "' (expected tm, te or both)");
}

void PlateSystem::validate() const {
  if (!(separation_a > 0) || !std::isfinite(separation_a)) throw DomainError("separation a must be > 0");
  if (!(temperature_T >= 0) || !std::isfinite(temperature_T)) throw DomainError("temperature T must be >= 0");
  material.validate();
  if (!std::isfinite(material.eps_bar)) throw DomainError("eps_bar must be finite here; use the perfect_conductor model");
}

namespace {

template <class Real>
const quadrature::ExpSinhTable<Real>& inner_table() {
  if constexpr (std::is_same_v<Real, double>) {
    static const quadrature::ExpSinhTable<double> table(8, -4.0, 1.6);
    return table;
  } else {
    static const quadrature::ExpSinhTable<Real> table(9, -4.8, 1.9);
    return table;
  }
}

/// Wide exp-sinh table for TE integrands that live on a scale far below 1
/// and decay only algebraically above it.
template <class Real>
const quadrature::ExpSinhTable<Real>& scaled_table() {
  static const quadrature::ExpSinhTable<Real> table(std::is_same_v<Real, double> ? 8 : 9, -4.0, 3.2);
  return table;
}

/// exp-sinh table for the outer frequency integral of the T = 0 energy.
const quadrature::ExpSinhTable<double>& outer_table() {
  static const quadrature::ExpSinhTable<double> table(9, -4.8, 1.7);
  return table;
}

std::vector<Mode> selected_modes(Polarization pol) {
  switch (pol) {
    case Polarization::TM: return {Mode::TM};
    case Polarization::TE: return {Mode::TE};
    case Polarization::Both: return {Mode::TM, Mode::TE};
  }
  return {};
}

}  // namespace

template <class Real>
ModeFunction<Real>::ModeFunction(const PlateSystem& system, const Real& rel_tol)
    : system_(system),
      rel_tol_(rel_tol),
      temperature_(units::temperature_to_internal(system.temperature_T)),
      two_a_(2 * Real(units::length_to_internal(system.separation_a))) {
  system_.validate();
}

template <class Real>
Real ModeFunction<Real>::eps_minus_one(const Real& m) const {
  return dielectric::eps_minus_one<Real>(system_.material, zeta(m));
}

template <class Real>
Real ModeFunction<Real>::zero_frequency_r2(Mode mode) const {
  const auto& mat = system_.material;
  if (mat.mode == dielectric::ModelKind::PerfectConductor) return Real(1);
  if (mode == Mode::TE) return Real(0);
  if (mat.four_pi_sigma > 0) return Real(1);
  const Real r = (Real(mat.eps_bar) - 1) / (Real(mat.eps_bar) + 1);
  return r * r;
}

template <class Real>
Real ModeFunction<Real>::prefactor() const {
  const Real a = two_a_ / 2;
  return temperature_ / (8 * pi<Real>() * a * a);
}

template <class Real>
quadrature::Result<Real> ModeFunction<Real>::g_at(const Real& x0, const Real& em1, Mode mode) const {
  if (!(em1 < std::numeric_limits<Real>::infinity())) return g_fixed(Real(1), x0);
  using std::sqrt;
  // TE reflection switches on where em1 (x0/x)^2 ~ 1, i.e. x ~ x0 sqrt(1 + em1).
  const Real width = x0 * sqrt(1 + em1);
  const bool scaled = mode == Mode::TE && width < Real(1e-6);
  const Real s = scaled ? width : Real(1);
  const auto& table = scaled ? scaled_table<Real>() : inner_table<Real>();
  auto level_sum = [&](int l, int& evals) -> Real {
    const auto& lev = table.level(l);
    evals += static_cast<int>(lev.offset.size());
    if constexpr (std::is_same_v<Real, double>) {
      static const kernels::WeightedSumFn kernel = kernels::weighted_sum();
      if (!scaled) return kernel(mode, em1, x0, lev.offset.data(), lev.weight.data(), lev.offset.size());
      std::vector<double> y(lev.offset.size()), w(lev.weight.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = s * lev.offset[i];
        w[i] = s * lev.weight[i];
      }
      return kernel(mode, em1, x0, y.data(), w.data(), y.size());
    } else {
      CompensatedSum<Real> acc;
      for (std::size_t i = 0; i < lev.offset.size(); ++i) {
        acc.add(s * lev.weight[i] * kernels::integrand<Real>(mode, em1, x0, Real(x0 + s * lev.offset[i])));
      }
      return acc.value();
    }
  };
  auto r = quadrature::detail::refine<Real>(level_sum, table.max_level(), rel_tol_, scaled ? 4 : 3, Real(1));
  if (!r.converged) {
    throw NumericalError("mode integral did not converge", static_cast<double>(r.value),
                         static_cast<double>(r.error));
  }
  return r;
}

template <class Real>
quadrature::Result<Real> ModeFunction<Real>::g_fixed(const Real& r2, const Real& x0) const {
  const auto& table = inner_table<Real>();
  if (r2 == 0) return {Real(0), Real(0), 0, 0, true};
  auto level_sum = [&](int l, int& evals) -> Real {
    const auto& lev = table.level(l);
    evals += static_cast<int>(lev.offset.size());
    CompensatedSum<Real> s;
    for (std::size_t i = 0; i < lev.offset.size(); ++i) {
      s.add(lev.weight[i] * kernels::integrand_fixed<Real>(r2, Real(x0 + lev.offset[i])));
    }
    return s.value();
  };
  auto r = quadrature::detail::refine<Real>(level_sum, table.max_level(), rel_tol_, 3, Real(1));
  if (!r.converged) {
    throw NumericalError("mode integral did not converge", static_cast<double>(r.value),
                         static_cast<double>(r.error));
  }
  return r;
}

template <class Real>
quadrature::Result<Real> ModeFunction<Real>::g(const Real& m, Mode mode) const {
  if (m < 0) throw DomainError("mode index must be >= 0");
  if (m == 0) return g_fixed(zero_frequency_r2(mode), Real(0));
  if (system_.material.mode == dielectric::ModelKind::PerfectConductor) return g_fixed(Real(1), x0(m));
  return g_at(x0(m), eps_minus_one(m), mode);
}

template class ModeFunction<double>;
template class ModeFunction<quad>;

ModeSummand mode_integral(const PlateSystem& system, long long m, Polarization pol) {
  if (m < 0) throw DomainError("mode index must be >= 0");
  if (pol == Polarization::Both) throw DomainError("mode_integral needs a single polarization");
  if (!(system.temperature_T > 0) && m > 0) throw DomainError("mode_integral: m > 0 needs T > 0");
  const ModeFunction<double> fn(system, 1e-12);
  const auto r = fn.g(static_cast<double>(m), pol == Polarization::TM ? Mode::TM : Mode::TE);
  return {m, r.value, r.error};
}

FreeEnergyResult free_energy(const PlateSystem& system) {
  system.validate();
  if (!(system.temperature_T > 0)) throw DomainError("free_energy requires T > 0");
  const ModeFunction<double> fn(system, 1e-12);
  constexpr std::size_t block = 256;
  constexpr long long m_cap = 20000000;
  const double step = fn.x0(1.0);
  const double tail_factor = 1 / std::expm1(step);  // rho / (1 - rho), rho = e^{-x0(1)}

  FreeEnergyResult out;
  for (Mode mode : selected_modes(system.polarization)) {
    CompensatedSum<double> sum;
    double err = 0;
    const auto g0 = fn.g(0.0, mode);
    sum.add(0.5 * g0.value);
    err += 0.5 * g0.error;
    long long m = 1;
    std::vector<quadrature::Result<double>> values(block);
    while (true) {
      parallel_for(block, [&](std::size_t i) {
        values[i] = fn.g(static_cast<double>(m + static_cast<long long>(i)), mode);
      });
      for (const auto& v : values) {
        sum.add(v.value);
        err += v.error;
      }
      m += static_cast<long long>(block);
      const double last = values.back().value;
      const double tail = last * tail_factor;
      if (std::abs(tail) <= 1e-15 * std::abs(sum.value())) {
        sum.add(tail);
        err += std::abs(tail);
        break;
      }
      if (m > m_cap) {
        throw ConvergenceError("Matsubara sum did not converge",
                               units::energy_density_to_si(fn.prefactor() * sum.value()),
                               units::energy_density_to_si(fn.prefactor() * std::abs(tail)), m);
      }
    }
    const double f = units::energy_density_to_si(fn.prefactor() * sum.value());
    (mode == Mode::TM ? out.tm : out.te) = f;
    out.est_error += units::energy_density_to_si(fn.prefactor() * err);
    out.m_truncation = std::max(out.m_truncation, m - 1);
  }
  out.total = out.tm + out.te;
  return out;
}

FreeEnergyResult zero_temperature_energies(const PlateSystem& system) {
  system.validate();
  PlateSystem sys = system;
  sys.temperature_T = 0;
  const ModeFunction<double> fn(sys, 1e-13);
  const double a = units::length_to_internal(system.separation_a);
  const double two_a = 2 * a;
  const double scale = 1 / (32 * pi<double>() * pi<double>() * a * a * a);
  const auto& mat = system.material;

  FreeEnergyResult out;
  for (Mode mode : selected_modes(system.polarization)) {
    auto G = [&](double w) {
      if (mat.mode == dielectric::ModelKind::PerfectConductor) return fn.g_fixed(1.0, w).value;
      const double em1 = dielectric::eps_minus_one<double>(mat, w / two_a);
      return fn.g_at(w, em1, mode).value;
    };
    const auto r = quadrature::integrate_exp_sinh<double>(outer_table(), G, 0.0, 1e-12);
    if (!r.converged) {
      throw NumericalError("zero-temperature frequency integral did not converge",
                           units::energy_density_to_si(scale * r.value),
                           units::energy_density_to_si(scale * r.error));
    }
    (mode == Mode::TM ? out.tm : out.te) = units::energy_density_to_si(scale * r.value);
    out.est_error += units::energy_density_to_si(scale * r.error);
  }
  out.total = out.tm + out.te;
  return out;
}

double zero_temperature_energy(const PlateSystem& system) { return zero_temperature_energies(system).total; }

namespace {

template <class Real>
struct Gamma {
  Real value{0};
  Real error{0};
};

/// [sum'_{m>=0} - int_0^inf dm] g(m) with shared g evaluations:
/// trapezoid sum on [0, M] minus the tanh-sinh integral on [0, M], plus the
/// Euler-Maclaurin tail at M from Chebyshev derivatives of g on [M/2, 3M/2].
template <class Real>
Gamma<Real> sum_minus_integral(const ModeFunction<Real>& fn, Mode mode, const Real& rel_tol) {
  using std::abs;
  constexpr int M = 64;
  constexpr int K = 10;

  auto eval = [&](std::span<const Real> ms, Real& err_sum) {
    std::vector<quadrature::Result<Real>> res(ms.size());
    parallel_for(ms.size(), [&](std::size_t i) { res[i] = fn.g(ms[i], mode); });
    std::vector<Real> v(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
      v[i] = res[i].value;
      err_sum += res[i].error;
    }
    return v;
  };

  Real point_err = 0;
  std::vector<Real> ints(M + 1);
  for (int m = 0; m <= M; ++m) ints[static_cast<std::size_t>(m)] = Real(m);
  const std::vector<Real> gi = eval(ints, point_err);
  CompensatedSum<Real> trap;
  for (int m = 0; m <= M; ++m) {
    const Real w = (m == 0 || m == M) ? Real(0.5) : Real(1);
    trap.add(w * gi[static_cast<std::size_t>(m)]);
  }

  static const quadrature::TanhSinhTable<Real> ts(8, 3.8);
  Real integral_point_err = 0;
  auto batch = [&](std::span<const Real> ms) { return eval(ms, integral_point_err); };
  const auto left = quadrature::integrate_tanh_sinh_batched<Real>(ts, batch, Real(0), Real(1), rel_tol);
  const auto right = quadrature::integrate_tanh_sinh_batched<Real>(ts, batch, Real(1), Real(M), rel_tol);
  if (!left.converged || !right.converged) {
    throw NumericalError("m integral of g did not converge",
                         static_cast<double>(left.value + right.value),
                         static_cast<double>(left.error + right.error));
  }

  auto em_tail = [&](int n, Real& last_term) {
    const Real lo = Real(M) / 2, hi = Real(3 * M) / 2;
    const auto nodes = quadrature::ChebyshevSeries<Real>::nodes(lo, hi, n);
    Real unused = 0;
    const std::vector<Real> samples = eval(nodes, unused);
    const quadrature::ChebyshevSeries<Real> series(samples, lo, hi);
    const auto& table = special::BernoulliTable::standard();
    CompensatedSum<Real> tail;
    Real fact = 1;
    for (int k = 1; k <= K; ++k) {
      fact *= Real(2 * k - 1) * Real(2 * k);
      last_term = -table.b2n<Real>(k) / fact * series.derivative(Real(M), 2 * k - 1);
      tail.add(last_term);
    }
    return tail.value();
  };
  Real last64 = 0, last48 = 0;
  const Real tail64 = em_tail(64, last64);
  const Real tail48 = em_tail(48, last48);

  Gamma<Real> out;
  out.value = trap.value() - (left.value + right.value) + tail64;
  // Pointwise g errors enter the sum once and the integral with total weight M.
  const Real per_point = point_err / Real(M + 1);
  out.error = left.error + right.error + point_err + per_point * Real(M) + abs(tail64 - tail48) +
              abs(last64);
  return out;
}

template <class Real>
DeltaFResult delta_f_impl(const PlateSystem& system, const Real& inner_tol, const Real& outer_tol) {
  const ModeFunction<Real> fn(system, inner_tol);
  const double f = static_cast<double>(fn.prefactor());
  DeltaFResult out;
  for (Mode mode : selected_modes(system.polarization)) {
    const Gamma<Real> gamma = sum_minus_integral<Real>(fn, mode, outer_tol);
    const double value = units::energy_density_to_si(f * static_cast<double>(gamma.value));
    const double err = units::energy_density_to_si(f * static_cast<double>(gamma.error));
    using std::abs;
    if (gamma.value != 0 || gamma.error != 0) {
      if (!(abs(gamma.error) <= Real(1e-3) * abs(gamma.value))) {
        throw PrecisionError("sum-minus-integral cancellation exceeds the working precision", value, err);
      }
    }
    if (mode == Mode::TM) {
      out.tm = value;
      out.tm_error = err;
      out.gamma_tm = static_cast<double>(gamma.value);
    } else {
      out.te = value;
      out.te_error = err;
      out.gamma_te = static_cast<double>(gamma.value);
    }
  }
  return out;
}

}  // namespace

DeltaFResult delta_f_direct(const PlateSystem& system, Precision precision) {
  system.validate();
  if (!(system.temperature_T > 0)) throw DomainError("delta_f_direct requires T > 0");
  if (precision == Precision::Double) return delta_f_impl<double>(system, 1e-14, 1e-14);
  return delta_f_impl<quad>(system, quad(1e-27), quad(1e-27));
}

}  // namespace casimir::lifshitz
