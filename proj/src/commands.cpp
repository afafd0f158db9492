#include "casimir/commands.hpp"

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/units.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace casimir::cli {

using lifshitz::Polarization;

namespace {

void emit(const Table& table, const RunConfig& config, const CommandOptions& opts, std::ostream& out) {
  const std::optional<std::string> stamp = opts.timestamp ? std::optional(timestamp_now()) : std::nullopt;
  if (config.format == OutputFormat::Json) {
    write_json(out, table, stamp);
  } else {
    write_csv(out, table, stamp);
  }
}

std::vector<Polarization> modes_of(Polarization pol) {
  if (pol == Polarization::Both) return {Polarization::TM, Polarization::TE};
  return {pol};
}

std::vector<double> require_positive(std::vector<double> temps) {
  if (temps.empty()) throw ConfigError("empty temperature grid");
  for (double T : temps) {
    if (!(T > 0) || !std::isfinite(T)) throw ConfigError("temperatures must be > 0");
  }
  return temps;
}

/// Configured temperatures, or fallback when none are set.
std::vector<double> temperatures_or(const RunConfig& config, const std::vector<double>& fallback) {
  if (config.temperatures.kind == TemperatureSpec::Kind::Unset) return require_positive(fallback);
  return require_positive(config.temperatures.values());
}

Cell maybe(bool present, double v) { return present ? Cell(v) : Cell(std::monostate{}); }

std::string pol_label(Polarization pol) { return lifshitz::polarization_name(pol); }

void add_sweep_rows(Table& table, const std::vector<diagnostics::SweepRecord>& records, bool figure) {
  for (const auto& r : records) {
    if (figure) {
      table.add_row({r.T, r.F_num, r.F_asym, pol_label(r.pol)});
    } else {
      table.add_row({r.T, r.F_num, r.F_asym, r.dF_num, r.dF_th, maybe(r.R_valid, r.R), pol_label(r.pol)});
    }
  }
}

std::vector<std::string> sweep_columns(bool figure) {
  if (figure) return {"T_K", "F_num", "F_asym", "pol"};
  return {"T_K", "F_num", "F_asym", "dF_num", "dF_th", "R", "pol"};
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  std::set<std::string> seen;
  for (const auto& w : warnings) {
    if (seen.insert(w).second) err << "warning: " << w << "\n";
  }
}

}  // namespace

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << " (partial value " << e.partial_value() << ", error bound "
        << e.error_bound() << ")\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
}

int cmd_energy(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto temps = temperatures_or(config, {1.0});
    const bool tm = config.polarization != Polarization::TE;
    const bool te = config.polarization != Polarization::TM;
    std::optional<asymptotics::AsymptoticResult> th_tm, th_te;
    const double sigma = config.material.four_pi_sigma;
    const double a = config.a_um * 1e-6;
    if (opts.with_asymptotics) {
      if (tm) th_tm = asymptotics::tm_expansion(sigma, a);
      if (te) th_te = asymptotics::te_expansion(sigma, a);
    }
    Table table;
    table.columns = {"T_K", "pol", "total", "tm", "te", "m_truncation", "est_error"};
    if (opts.with_asymptotics) {
      table.columns.push_back("dF_th_tm");
      table.columns.push_back("dF_th_te");
    }
    std::vector<std::string> warnings;
    for (double T : temps) {
      const auto r = lifshitz::free_energy(config.system(T));
      std::vector<Cell> row{T, pol_label(config.polarization), r.total, maybe(tm, r.tm), maybe(te, r.te),
                            static_cast<std::int64_t>(r.m_truncation), r.est_error};
      if (opts.with_asymptotics) {
        row.push_back(maybe(tm, th_tm ? th_tm->evaluate(T) : 0.0));
        row.push_back(maybe(te, th_te ? th_te->evaluate(T) : 0.0));
        for (const auto* th : {th_tm ? &*th_tm : nullptr, th_te ? &*th_te : nullptr}) {
          if (th) {
            const auto w = th->warnings(T);
            warnings.insert(warnings.end(), w.begin(), w.end());
          }
        }
      }
      table.add_row(std::move(row));
    }
    print_warnings(err, warnings);
    emit(table, config, opts, out);
    return kOk;
  });
}

int cmd_sweep(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Precision precision = config.precision();
    Table table;
    table.columns = sweep_columns(opts.figure);
    for (Polarization pol : modes_of(config.polarization)) {
      const auto grid = temperatures_or(config, diagnostics::default_grid(pol));
      const auto records = diagnostics::r_curve(config.system(grid.front()), grid, pol, precision);
      add_sweep_rows(table, records, opts.figure);
    }
    emit(table, config, opts, out);
    return kOk;
  });
}

int cmd_asymptotics(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double sigma = config.material.four_pi_sigma;
    const double a = config.a_um * 1e-6;
    std::vector<std::pair<Polarization, asymptotics::AsymptoticResult>> parts;
    for (Polarization pol : modes_of(config.polarization)) {
      if (pol == Polarization::TM) {
        parts.emplace_back(pol, asymptotics::tm_expansion(sigma, a));
        parts.emplace_back(pol, asymptotics::tm_correction_expansion());
      } else {
        parts.emplace_back(pol, asymptotics::te_expansion(sigma, a));
      }
    }
    const auto temps = config.temperatures.kind == TemperatureSpec::Kind::Unset
                           ? std::vector<double>{}
                           : require_positive(config.temperatures.values());
    Table table;
    table.columns = {"kind", "pol", "source", "power", "coefficient", "T_K", "value"};
    const Cell none = std::monostate{};
    for (const auto& [pol, res] : parts) {
      for (const auto& term : res.terms) {
        const std::string power = term.power_of_T.den == 1
                                      ? std::to_string(term.power_of_T.num)
                                      : std::to_string(term.power_of_T.num) + "/" + std::to_string(term.power_of_T.den);
        table.add_row({std::string("term"), pol_label(pol), asymptotics::term_source_name(term.source), power,
                       term.coefficient, none, none});
      }
    }
    std::vector<std::string> warnings;
    for (double T : temps) {
      for (const auto& [pol, res] : parts) {
        std::set<asymptotics::TermSource> sources;
        for (const auto& term : res.terms) sources.insert(term.source);
        for (auto source : sources) {
          table.add_row({std::string("value"), pol_label(pol), asymptotics::term_source_name(source), none, none, T,
                         res.evaluate(T, source)});
        }
        const auto w = res.warnings(T);
        warnings.insert(warnings.end(), w.begin(), w.end());
      }
    }
    print_warnings(err, warnings);
    emit(table, config, opts, out);
    return kOk;
  });
}

int cmd_verify_constants(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
                         std::ostream& err, const special::BernoulliTable& table_b) {
  return guarded(err, [&] {
    constexpr int kTerms = 15;
    constexpr double kTolerance = 1e-9;
    using special::TermKind;
    const double psi_closed = static_cast<double>(special::psi_constant<quad>());
    const double phi_closed = static_cast<double>(special::phi_constant<quad>());
    const auto psi_terms = special::divergent_series_terms<quad>({TermKind::LogPower}, kTerms, table_b);
    const auto phi_terms = special::divergent_series_terms<quad>({TermKind::HalfPower}, kTerms, table_b);
    const auto psi_levin = special::levin_u_sum<quad>(psi_terms);
    const auto phi_levin = special::levin_u_sum<quad>(phi_terms);
    const auto borel = special::borel_sum_psi_tilde<quad>();
    const double psi_borel = static_cast<double>(quad(1) / 36 - 2 * borel.value);

    Table table;
    table.columns = {"quantity", "kind", "method", "value"};
    table.add_row({std::string("Psi"), std::string("value"), std::string("closed_form"), psi_closed});
    table.add_row({std::string("Psi"), std::string("value"), std::string("levin"), static_cast<double>(psi_levin.value)});
    table.add_row({std::string("Psi"), std::string("value"), std::string("borel"), psi_borel});
    table.add_row({std::string("Phi"), std::string("value"), std::string("closed_form"), phi_closed});
    table.add_row({std::string("Phi"), std::string("value"), std::string("levin"), static_cast<double>(phi_levin.value)});

    struct Pair {
      std::string quantity, name;
      double a, b;
    };
    const std::vector<Pair> pairs{
        {"Psi", "levin-closed_form", static_cast<double>(psi_levin.value), psi_closed},
        {"Psi", "borel-closed_form", psi_borel, psi_closed},
        {"Psi", "levin-borel", static_cast<double>(psi_levin.value), psi_borel},
        {"Phi", "levin-closed_form", static_cast<double>(phi_levin.value), phi_closed},
    };
    bool ok = true;
    for (const auto& p : pairs) {
      const double d = std::abs(p.a - p.b);
      if (!(d < kTolerance)) {
        ok = false;
        err << "mismatch: " << p.quantity << " " << p.name << " differs by " << d << "\n";
      }
      table.add_row({p.quantity, std::string("abs_diff"), p.name, d});
    }
    emit(table, config, opts, out);
    return ok ? kOk : kAssertFailed;
  });
}

int cmd_anomaly(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto temps = temperatures_or(config, {1.0});
    const double eps = config.material.eps_bar;
    const double a = config.a_um * 1e-6;
    const double A0 = std::isinf(eps) ? 1.0 : dielectric::a_mu(eps, std::numeric_limits<double>::infinity());
    Table table;
    table.columns = {"eps_bar", "a_m", "A0", "T_K", "free_energy", "linear_coefficient", "entropy", "anomaly"};
    bool anomaly = false;
    double entropy = 0;
    for (double T : temps) {
      const auto r = asymptotics::linear_anomaly(eps, a, T);
      anomaly = r.entropy != 0;
      entropy = r.entropy;
      table.add_row({eps, a, A0, T, r.free_energy, r.linear_coefficient, r.entropy, anomaly});
    }
    if (anomaly) {
      err << "note: entropy at T = 0 is " << entropy << " J/(K m^2), not zero; the Nernst heat theorem is violated\n";
    }
    emit(table, config, opts, out);
    return kOk;
  });
}

int cmd_rdiag(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err,
              const RdiagHooks& hooks) {
  return guarded(err, [&] {
    const Precision precision = config.precision();
    Table table;
    table.columns = sweep_columns(false);
    bool failed = false;
    for (Polarization pol : modes_of(config.polarization)) {
      const auto grid = temperatures_or(config, diagnostics::default_grid(pol));
      const lifshitz::PlateSystem base = config.system(grid.front());
      if (pol == Polarization::TE) {
        const double alpha = units::alpha_param(base.separation_a, base.material.four_pi_sigma);
        if (alpha < 0.1) err << "warning: TE R-diagnostic unfeasible at small α (alpha = " << alpha << ")\n";
      }
      std::vector<diagnostics::SweepRecord> records;
      if (!hooks.numeric && !hooks.theory) {
        records = diagnostics::r_curve(base, grid, pol, precision);
      } else {
        lifshitz::PlateSystem single = base;
        single.polarization = pol;
        const auto theory = hooks.theory ? hooks.theory : diagnostics::theory_function(base, pol);
        diagnostics::TemperatureFunction numeric = hooks.numeric;
        if (!numeric) {
          numeric = [&](double T) {
            single.temperature_T = T;
            const auto d = lifshitz::delta_f_direct(single, precision);
            return pol == Polarization::TE ? d.te : d.tm;
          };
        }
        records = diagnostics::r_curve(grid, pol, numeric, theory);
      }
      add_sweep_rows(table, records, false);
      if (opts.assert_thresholds && pol == Polarization::TM) {
        if (records.size() < 3 || !records[0].R_valid || !records[1].R_valid || !records[2].R_valid) {
          err << "assertion failed: R is undefined at the start of the grid\n";
          failed = true;
          continue;
        }
        const double r0 = records.front().R;
        const double slope = diagnostics::r_slope_at_start(records);
        if (!(std::abs(r0) <= kRdiagMaxR)) {
          err << "assertion failed: |R(" << records.front().T << " K)| = " << std::abs(r0) << " > " << kRdiagMaxR << "\n";
          failed = true;
        }
        if (!(std::abs(slope) <= kRdiagMaxSlope)) {
          err << "assertion failed: |dR/dT| at " << records.front().T << " K = " << std::abs(slope) << " 1/K > "
              << kRdiagMaxSlope << "\n";
          failed = true;
        }
      }
    }
    emit(table, config, opts, out);
    return failed ? kAssertFailed : kOk;
  });
}

}  // namespace casimir::cli
