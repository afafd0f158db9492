#pragma once

// Temperature sweeps comparing direct numerics with the asymptotic theory:
// the relative deviation R = (dF_th - dF_num) / dF_th, the fit
// dF_num = -D T^2 (1 - D1 T + D2 T^2), and the TE cube-term comparison.

#include "casimir/lifshitz.hpp"
#include "casimir/real.hpp"

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace casimir::diagnostics {

using lifshitz::Polarization;

struct SweepRecord {
  double T = 0;       // K
  double F_num = 0;   // J/m^2, F(0) + dF_num
  double F_asym = 0;  // J/m^2, F(0) + dF_th
  double dF_num = 0;
  double dF_th = 0;
  double R = 0;
  bool R_valid = false;  // false when dF_th = 0
  Polarization pol = Polarization::TM;
};

struct FitResult {
  double D = 0;   // J/(K^2 m^2)
  double D1 = 0;  // 1/K
  double D2 = 0;  // 1/K^2
  std::array<std::array<double, 3>, 3> covariance{};  // of (D, D1, D2)
  std::array<double, 2> T_range{};
  double condition_number = 0;
};

using TemperatureFunction = std::function<double(double)>;

/// Logarithmic grid from t_min to t_max inclusive.
std::vector<double> log_grid(double t_min, double t_max, double points_per_decade);
std::vector<double> default_grid(Polarization pol);  // TM [0.02, 1] K, TE [0.1, 2] K

/// Asymptotic dF for one polarization: the two-term TM form, or the full TE form.
TemperatureFunction theory_function(const lifshitz::PlateSystem& system, Polarization pol);

/// R curve from given numerics and theory; F0 shifts F_num and F_asym.
std::vector<SweepRecord> r_curve(std::span<const double> T_grid, Polarization pol,
                                 const TemperatureFunction& dF_num,
                                 const TemperatureFunction& dF_th, double F0 = 0);

/// R curve of a plate system, numerics from delta_f_direct.
std::vector<SweepRecord> r_curve(const lifshitz::PlateSystem& system, std::span<const double> T_grid,
                                 Polarization pol, Precision precision = Precision::Quad);

/// Derivative of R at the first grid point from the first three records.
double r_slope_at_start(std::span<const SweepRecord> records);

/// Least squares of ln|dF_num| against ln|D T^2 (1 - D1 T + D2 T^2)|; D takes
/// the sign that makes -D T^2 match the data.
FitResult fit_expansion(std::span<const SweepRecord> records);
FitResult fit_expansion(std::span<const double> T, std::span<const double> dF);

struct CubeRow {
  double T = 0;
  double dF_num = 0;
  double residual = 0;   // dF_num - C2 T^2
  double cube_abs = 0;   // |zeta(3) T^3 / (8 pi)| in J/m^2
  double ratio = 0;      // residual / (T^3 term), positive when the signs agree
};

struct CubeComparison {
  std::vector<CubeRow> rows;
  bool same_order = false;  // every ratio on [0.5, 2] K lies in [0.2, 5]
  int rows_checked = 0;
};

CubeComparison te_cube_comparison(std::span<const double> T_grid, double sigma_si_over_eps0,
                                  const TemperatureFunction& dF_num);
CubeComparison te_cube_comparison(const lifshitz::PlateSystem& system, std::span<const double> T_grid,
                                  Precision precision = Precision::Quad);

}  // namespace casimir::diagnostics
