#pragma once

// Run configuration for the command-line tool: INI-style text with the
// sections [material], [geometry] and [run], plus built-in presets.

#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/real.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace casimir::cli {

/// Invalid configuration or usage; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Csv, Json };

std::string format_name(OutputFormat format);
OutputFormat parse_format(std::string_view name);

struct TemperatureSpec {
  enum class Kind { Unset, List, Grid };
  Kind kind = Kind::Unset;
  std::vector<double> list;  // K
  double min = 0;            // K
  double max = 0;            // K
  double points_per_decade = 0;

  /// Explicit list or expanded grid; empty when unset.
  std::vector<double> values() const;
};

struct RunConfig {
  dielectric::DielectricModel material = dielectric::silicon();
  double a_um = 1.0;
  TemperatureSpec temperatures;
  lifshitz::Polarization polarization = lifshitz::Polarization::Both;
  int precision_digits = 33;
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;

  lifshitz::PlateSystem system(double T) const;
  Precision precision() const { return precision_from_digits(precision_digits); }

  /// <= 15 digits: double; 16..33: quad; otherwise ConfigError.
  static Precision precision_from_digits(int digits);
};

bool operator==(const TemperatureSpec& a, const TemperatureSpec& b);
bool operator==(const RunConfig& a, const RunConfig& b);

/// 33, or CASIMIR_PRECISION when set.
int default_precision_digits();

/// Applies the keys in text on top of base.
RunConfig parse_config(std::string_view text, RunConfig base = RunConfig{});
std::string serialize_config(const RunConfig& config);

/// "si-paper", "si-fig2", "ideal-metal-check".
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace casimir::cli
