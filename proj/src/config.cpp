#include "casimir/config.hpp"

#include "casimir/diagnostics.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace casimir::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError("config key '" + key + "': not a number: '" + t + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + key + "': not an integer: '" + t + "'");
  }
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(to_number(key, item));
  }
  return out;
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void apply_material(RunConfig& cfg, const pt::ptree& section) {
  for (const auto& [key, node] : section) {
    try {
      if (!dielectric::set_material_key(cfg.material, key, node.data())) {
        throw ConfigError("unknown key 'material." + key + "'");
      }
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
}

void apply_geometry(RunConfig& cfg, const pt::ptree& section) {
  for (const auto& [key, node] : section) {
    if (key == "a_um") {
      cfg.a_um = to_number("geometry.a_um", node.data());
    } else {
      throw ConfigError("unknown key 'geometry." + key + "'");
    }
  }
}

void apply_run(RunConfig& cfg, const pt::ptree& section) {
  for (const auto& [key, node] : section) {
    const std::string& v = node.data();
    if (key == "temperatures") {
      cfg.temperatures.kind = TemperatureSpec::Kind::List;
      cfg.temperatures.list = to_list("run.temperatures", v);
    } else if (key == "t_min") {
      cfg.temperatures.kind = TemperatureSpec::Kind::Grid;
      cfg.temperatures.min = to_number("run.t_min", v);
    } else if (key == "t_max") {
      cfg.temperatures.kind = TemperatureSpec::Kind::Grid;
      cfg.temperatures.max = to_number("run.t_max", v);
    } else if (key == "points_per_decade") {
      cfg.temperatures.kind = TemperatureSpec::Kind::Grid;
      cfg.temperatures.points_per_decade = to_number("run.points_per_decade", v);
    } else if (key == "polarization") {
      try {
        cfg.polarization = lifshitz::parse_polarization(trim(v));
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "precision") {
      cfg.precision_digits = to_int("run.precision", v);
      RunConfig::precision_from_digits(cfg.precision_digits);
    } else if (key == "output") {
      cfg.output_path = trim(v);
    } else if (key == "format") {
      cfg.format = parse_format(trim(v));
    } else {
      throw ConfigError("unknown key 'run." + key + "'");
    }
  }
}

}  // namespace

std::string format_name(OutputFormat format) { return format == OutputFormat::Json ? "json" : "csv"; }

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::vector<double> TemperatureSpec::values() const {
  switch (kind) {
    case Kind::Unset: return {};
    case Kind::List: return list;
    case Kind::Grid:
      try {
        return diagnostics::log_grid(min, max, points_per_decade);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("temperature grid: ") + e.what());
      }
  }
  return {};
}

lifshitz::PlateSystem RunConfig::system(double T) const {
  lifshitz::PlateSystem s;
  s.separation_a = a_um * 1e-6;
  s.temperature_T = T;
  s.material = material;
  s.polarization = polarization;
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return s;
}

Precision RunConfig::precision_from_digits(int digits) {
  if (digits < 1) throw ConfigError("precision must be at least 1 digit");
  if (digits <= 15) return Precision::Double;
  if (digits <= 33) return Precision::Quad;
  throw ConfigError("precision of " + std::to_string(digits) + " digits exceeds the 33 supported");
}

bool operator==(const TemperatureSpec& a, const TemperatureSpec& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TemperatureSpec::Kind::Unset: return true;
    case TemperatureSpec::Kind::List: return a.list == b.list;
    case TemperatureSpec::Kind::Grid:
      return a.min == b.min && a.max == b.max && a.points_per_decade == b.points_per_decade;
  }
  return false;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.material.eps_bar == b.material.eps_bar && a.material.omega0 == b.material.omega0 &&
         a.material.four_pi_sigma == b.material.four_pi_sigma && a.material.mode == b.material.mode &&
         a.a_um == b.a_um && a.temperatures == b.temperatures && a.polarization == b.polarization &&
         a.precision_digits == b.precision_digits && a.output_path == b.output_path && a.format == b.format;
}

int default_precision_digits() {
  if (const char* env = std::getenv("CASIMIR_PRECISION")) {
    try {
      return to_int("CASIMIR_PRECISION", env);
    } catch (const ConfigError&) {
      throw ConfigError(std::string("CASIMIR_PRECISION is not an integer: '") + env + "'");
    }
  }
  return 33;
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [name, section] : tree) {
    if (section.empty() && !section.data().empty()) {
      throw ConfigError("config key '" + name + "' outside of a section");
    }
    if (name == "material") {
      apply_material(base, section);
    } else if (name == "geometry") {
      apply_geometry(base, section);
    } else if (name == "run") {
      apply_run(base, section);
    } else {
      throw ConfigError("unknown config section [" + name + "]");
    }
  }
  try {
    base.material.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(base.a_um > 0)) throw ConfigError("geometry.a_um must be > 0");
  return base;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[material]\n";
  out << "eps_bar = " << number(c.material.eps_bar) << "\n";
  out << "omega0 = " << number(c.material.omega0) << "\n";
  out << "sigma_over_eps0 = " << number(c.material.four_pi_sigma) << "\n";
  out << "model = " << dielectric::model_kind_name(c.material.mode) << "\n";
  out << "\n[geometry]\n";
  out << "a_um = " << number(c.a_um) << "\n";
  out << "\n[run]\n";
  if (c.temperatures.kind == TemperatureSpec::Kind::List) {
    out << "temperatures = ";
    for (std::size_t i = 0; i < c.temperatures.list.size(); ++i) {
      out << (i ? ", " : "") << number(c.temperatures.list[i]);
    }
    out << "\n";
  } else if (c.temperatures.kind == TemperatureSpec::Kind::Grid) {
    out << "t_min = " << number(c.temperatures.min) << "\n";
    out << "t_max = " << number(c.temperatures.max) << "\n";
    out << "points_per_decade = " << number(c.temperatures.points_per_decade) << "\n";
  }
  out << "polarization = " << lifshitz::polarization_name(c.polarization) << "\n";
  out << "precision = " << c.precision_digits << "\n";
  if (!c.output_path.empty()) out << "output = " << c.output_path << "\n";
  out << "format = " << format_name(c.format) << "\n";
  return out.str();
}

RunConfig preset(std::string_view name) {
  RunConfig c;
  c.precision_digits = default_precision_digits();
  if (name == "si-paper") return c;
  if (name == "si-fig2") {
    c.material.eps_bar = 1.0;
    return c;
  }
  if (name == "ideal-metal-check") {
    c.material.mode = dielectric::ModelKind::PerfectConductor;
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"si-paper", "si-fig2", "ideal-metal-check"}; }

}  // namespace casimir::cli
