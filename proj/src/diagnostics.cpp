#include "casimir/diagnostics.hpp"

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>

namespace casimir::diagnostics {

namespace {

void check_grid(std::span<const double> T_grid) {
  if (T_grid.empty()) throw DomainError("temperature grid is empty");
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] > 0) || !std::isfinite(T_grid[i])) throw DomainError("grid temperatures must be > 0");
    if (i > 0 && !(T_grid[i] > T_grid[i - 1])) throw DomainError("temperature grid must be ascending");
  }
}

lifshitz::PlateSystem single_mode(const lifshitz::PlateSystem& system, Polarization pol, double T) {
  lifshitz::PlateSystem s = system;
  s.polarization = pol;
  s.temperature_T = T;
  return s;
}

double pick(const lifshitz::DeltaFResult& r, Polarization pol) { return pol == Polarization::TE ? r.te : r.tm; }

double pick(const lifshitz::FreeEnergyResult& r, Polarization pol) {
  return pol == Polarization::TE ? r.te : r.tm;
}

}  // namespace

std::vector<double> log_grid(double t_min, double t_max, double points_per_decade) {
  if (!(t_min > 0) || !(t_max >= t_min)) throw DomainError("log grid needs 0 < min <= max");
  if (!(points_per_decade > 0)) throw DomainError("points per decade must be positive");
  const long n = std::lround(points_per_decade * std::log10(t_max / t_min));
  if (n <= 0) return {t_min};
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    grid[static_cast<std::size_t>(i)] = t_min * std::pow(t_max / t_min, static_cast<double>(i) / n);
  }
  grid.back() = t_max;
  return grid;
}

std::vector<double> default_grid(Polarization pol) {
  return pol == Polarization::TE ? log_grid(0.1, 2.0, 25) : log_grid(0.02, 1.0, 25);
}

TemperatureFunction theory_function(const lifshitz::PlateSystem& system, Polarization pol) {
  if (pol == Polarization::Both) throw DomainError("theory_function needs a single polarization");
  const double sigma = system.material.four_pi_sigma;
  const double a = system.separation_a;
  if (pol == Polarization::TM) {
    const auto exp = asymptotics::tm_expansion(sigma, a);
    return [exp](double T) { return exp.evaluate(T); };
  }
  const auto exp = asymptotics::te_expansion(sigma, a);
  return [exp](double T) { return exp.evaluate(T); };
}

std::vector<SweepRecord> r_curve(std::span<const double> T_grid, Polarization pol,
                                 const TemperatureFunction& dF_num, const TemperatureFunction& dF_th,
                                 double F0) {
  check_grid(T_grid);
  std::vector<SweepRecord> out(T_grid.size());
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    SweepRecord& r = out[i];
    r.T = T_grid[i];
    r.pol = pol;
    r.dF_num = dF_num(r.T);
    r.dF_th = dF_th(r.T);
    r.F_num = F0 + r.dF_num;
    r.F_asym = F0 + r.dF_th;
    r.R_valid = r.dF_th != 0;
    r.R = r.R_valid ? (r.dF_th - r.dF_num) / r.dF_th : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::vector<SweepRecord> r_curve(const lifshitz::PlateSystem& system, std::span<const double> T_grid,
                                 Polarization pol, Precision precision) {
  if (pol == Polarization::Both) throw DomainError("r_curve needs a single polarization");
  check_grid(T_grid);
  const auto theory = theory_function(system, pol);
  const double F0 = pick(lifshitz::zero_temperature_energies(single_mode(system, pol, 0.0)), pol);
  auto numeric = [&](double T) {
    return pick(lifshitz::delta_f_direct(single_mode(system, pol, T), precision), pol);
  };
  return r_curve(T_grid, pol, numeric, theory, F0);
}

double r_slope_at_start(std::span<const SweepRecord> records) {
  if (records.size() < 3) throw DomainError("slope needs three records");
  const double x0 = records[0].T, x1 = records[1].T, x2 = records[2].T;
  const double f0 = records[0].R, f1 = records[1].R, f2 = records[2].R;
  // Derivative at x0 of the quadratic through the three points.
  return f0 * (2 * x0 - x1 - x2) / ((x0 - x1) * (x0 - x2)) + f1 * (x0 - x2) / ((x1 - x0) * (x1 - x2)) +
         f2 * (x0 - x1) / ((x2 - x0) * (x2 - x1));
}

FitResult fit_expansion(std::span<const SweepRecord> records) {
  std::vector<double> T, dF;
  for (const auto& r : records) {
    T.push_back(r.T);
    dF.push_back(r.dF_num);
  }
  return fit_expansion(T, dF);
}

FitResult fit_expansion(std::span<const double> T, std::span<const double> dF) {
  const std::size_t n = T.size();
  if (n != dF.size()) throw DomainError("fit_expansion: size mismatch");
  if (n < 6) throw DomainError("fit_expansion needs at least 6 records");
  double t_lo = T[0], t_hi = T[0];
  for (double t : T) {
    if (!(t > 0)) throw DomainError("fit_expansion: temperatures must be > 0");
    t_lo = std::min(t_lo, t);
    t_hi = std::max(t_hi, t);
  }
  if (t_hi < 10 * t_lo * (1 - 1e-12)) throw DomainError("fit_expansion: records must span a decade in T");
  const double sign = dF[0] > 0 ? 1.0 : -1.0;
  for (double v : dF) {
    if (!(v * sign > 0) || !std::isfinite(v)) throw DomainError("fit_expansion: dF must be nonzero and of one sign");
  }

  // Start from the linear fit of |dF| / T^2 = D (1 - D1 T + D2 T^2) with relative weights.
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = std::abs(dF[i]) / (T[i] * T[i]);
    A(static_cast<Eigen::Index>(i), 0) = 1 / z;
    A(static_cast<Eigen::Index>(i), 1) = T[i] / z;
    A(static_cast<Eigen::Index>(i), 2) = T[i] * T[i] / z;
    b(static_cast<Eigen::Index>(i)) = 1;
    y(static_cast<Eigen::Index>(i)) = std::log(std::abs(dF[i]));
  }
  const Eigen::Vector3d beta = A.colPivHouseholderQr().solve(b);
  if (!(beta(0) > 0)) throw NumericalError("fit_expansion: linear start has non-positive |D|");
  Eigen::Vector3d p(std::log(beta(0)), -beta(1) / beta(0), beta(2) / beta(0));

  Eigen::MatrixXd J(n, 3);
  Eigen::VectorXd res(n);
  auto linearize = [&](const Eigen::Vector3d& q) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      const double bracket = 1 - q(1) * T[i] + q(2) * T[i] * T[i];
      if (!(bracket > 0)) throw NumericalError("fit_expansion: model bracket became non-positive");
      J(k, 0) = 1;
      J(k, 1) = -T[i] / bracket;
      J(k, 2) = T[i] * T[i] / bracket;
      res(k) = y(k) - (q(0) + 2 * std::log(T[i]) + std::log(bracket));
    }
  };
  for (int iter = 0; iter < 100; ++iter) {
    linearize(p);
    const Eigen::Vector3d step = J.colPivHouseholderQr().solve(res);
    p += step;
    if (step.cwiseAbs().maxCoeff() < 1e-15 * (1 + p.cwiseAbs().maxCoeff())) break;
  }
  linearize(p);

  Eigen::MatrixXd Js = J;
  for (Eigen::Index c = 0; c < 3; ++c) Js.col(c) /= Js.col(c).norm();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Js);
  const auto& sv = svd.singularValues();
  const double cond = sv(2) > 0 ? sv(0) / sv(2) : std::numeric_limits<double>::infinity();
  if (!(cond < 1e10)) {
    std::ostringstream msg;
    msg << "fit_expansion: ill-conditioned fit (condition number " << cond << ")";
    throw NumericalError(msg.str());
  }

  FitResult out;
  out.D = -sign * std::exp(p(0));
  out.D1 = p(1);
  out.D2 = p(2);
  out.T_range = {t_lo, t_hi};
  out.condition_number = cond;
  const double s2 = n > 3 ? res.squaredNorm() / static_cast<double>(n - 3) : 0.0;
  const Eigen::Matrix3d cov_p = s2 * (J.transpose() * J).inverse();
  const Eigen::Vector3d g(out.D, 1, 1);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.covariance[i][j] = g(i) * g(j) * cov_p(i, j);
  }
  return out;
}

CubeComparison te_cube_comparison(std::span<const double> T_grid, double sigma_si_over_eps0,
                                  const TemperatureFunction& dF_num) {
  check_grid(T_grid);
  const double C2 = asymptotics::te_c2(sigma_si_over_eps0);
  const double cube = asymptotics::te_expansion(sigma_si_over_eps0, 1.0)
                          .coefficient({3, 1}, asymptotics::TermSource::TE_I);
  CubeComparison out;
  out.same_order = true;
  for (double T : T_grid) {
    CubeRow row;
    row.T = T;
    row.dF_num = dF_num(T);
    row.residual = row.dF_num - C2 * T * T;
    const double term = cube * T * T * T;
    row.cube_abs = std::abs(term);
    row.ratio = row.residual / term;
    if (T >= 0.5 && T <= 2.0) {
      ++out.rows_checked;
      if (!(row.ratio >= 0.2 && row.ratio <= 5.0)) out.same_order = false;
    }
    out.rows.push_back(row);
  }
  if (out.rows_checked == 0) out.same_order = false;
  return out;
}

CubeComparison te_cube_comparison(const lifshitz::PlateSystem& system, std::span<const double> T_grid,
                                  Precision precision) {
  auto numeric = [&](double T) {
    return lifshitz::delta_f_direct(single_mode(system, Polarization::TE, T), precision).te;
  };
  return te_cube_comparison(T_grid, system.material.four_pi_sigma, numeric);
}

}  // namespace casimir::diagnostics
