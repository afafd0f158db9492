#include "casimir/commands.hpp"
#include "casimir/config.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace casimir::cli;

namespace {

struct GlobalFlags {
  std::string config_path;
  std::string preset_name;
  std::string out_path;
  std::string format;
  std::string pol;
  int precision = -1;
  bool assert_thresholds = false;
  bool no_timestamp = false;
  bool figure = false;
  bool with_asymptotics = false;
};

RunConfig build_config(const GlobalFlags& f) {
  RunConfig config = preset(f.preset_name.empty() ? "si-paper" : f.preset_name);
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot read config file '" + f.config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    config = parse_config(text.str(), config);
  }
  if (!f.out_path.empty()) config.output_path = f.out_path;
  if (!f.format.empty()) config.format = parse_format(f.format);
  if (!f.pol.empty()) {
    try {
      config.polarization = casimir::lifshitz::parse_polarization(f.pol);
    } catch (const casimir::DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (f.precision >= 0) config.precision_digits = f.precision;
  RunConfig::precision_from_digits(config.precision_digits);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir-Lifshitz free energy of weakly conducting plates"};
  app.require_subcommand(1);
  GlobalFlags f;
  app.add_option("--config", f.config_path, "INI-style run configuration");
  app.add_option("--preset", f.preset_name, "si-paper, si-fig2 or ideal-metal-check");
  app.add_option("--out", f.out_path, "output file (default: standard output)");
  app.add_option("--format", f.format, "csv or json");
  app.add_option("--pol", f.pol, "tm, te or both");
  app.add_option("--precision", f.precision, "decimal digits of the extended-precision paths");
  app.add_flag("--assert", f.assert_thresholds, "rdiag: exit 1 when R thresholds are violated");
  app.add_flag("--no-timestamp", f.no_timestamp, "omit the generated-at header line");

  auto* energy = app.add_subcommand("energy", "free energy at each configured temperature");
  energy->add_flag("--asymptotics", f.with_asymptotics, "add the asymptotic temperature corrections");
  auto* sweep = app.add_subcommand("sweep", "numerical and asymptotic corrections over a temperature grid");
  sweep->add_flag("--figure", f.figure, "only T_K, F_num, F_asym, pol");
  auto* asym = app.add_subcommand("asymptotics", "coefficients of the low-temperature expansions");
  auto* verify = app.add_subcommand("verify-constants", "Psi and Phi by closed form, Levin and Borel summation");
  auto* anomaly = app.add_subcommand("anomaly", "linear-in-T term and T = 0 entropy for sigma = 0");
  auto* rdiag = app.add_subcommand("rdiag", "R diagnostic over a temperature grid");
  for (auto* sub : {energy, sweep, asym, verify, anomaly, rdiag}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  RunConfig config;
  const int config_status = guarded(std::cerr, [&] {
    config = build_config(f);
    return 0;
  });
  if (config_status != 0) return config_status;

  CommandOptions opts;
  opts.timestamp = !f.no_timestamp;
  opts.assert_thresholds = f.assert_thresholds;
  opts.figure = f.figure;
  opts.with_asymptotics = f.with_asymptotics;

  std::ofstream file;
  if (!config.output_path.empty()) {
    file.open(config.output_path);
    if (!file) {
      std::cerr << "error: cannot write '" << config.output_path << "'\n";
      return kConfigError;
    }
  }
  std::ostream& out = config.output_path.empty() ? std::cout : file;

  if (energy->parsed()) return cmd_energy(config, opts, out, std::cerr);
  if (sweep->parsed()) return cmd_sweep(config, opts, out, std::cerr);
  if (asym->parsed()) return cmd_asymptotics(config, opts, out, std::cerr);
  if (verify->parsed()) return cmd_verify_constants(config, opts, out, std::cerr);
  if (anomaly->parsed()) return cmd_anomaly(config, opts, out, std::cerr);
  return cmd_rdiag(config, opts, out, std::cerr);
}
