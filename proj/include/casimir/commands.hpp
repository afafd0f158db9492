#pragma once

// The subcommands of the command-line tool. Each returns the process exit
// code: 0 success, 1 assertion failure, 2 usage or configuration error,
// 3 numerical failure. Results go to out, messages to err.

#include "casimir/config.hpp"
#include "casimir/diagnostics.hpp"
#include "casimir/records.hpp"
#include "casimir/special_functions.hpp"

#include <functional>
#include <ostream>

namespace casimir::cli {

enum ExitCode : int { kOk = 0, kAssertFailed = 1, kConfigError = 2, kNumericalError = 3 };

struct CommandOptions {
  bool timestamp = true;
  bool assert_thresholds = false;  // rdiag
  bool figure = false;             // sweep: T_K, F_num, F_asym, pol only
  bool with_asymptotics = false;   // energy: add dF_th columns
};

/// Runs body and maps exceptions to exit codes, printing the message to err.
int guarded(std::ostream& err, const std::function<int()>& body);

int cmd_energy(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_asymptotics(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify_constants(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
                         std::ostream& err,
                         const special::BernoulliTable& table = special::BernoulliTable::standard());
int cmd_anomaly(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err);

/// Replacement numerics or theory for the R diagnostic, for tests.
struct RdiagHooks {
  diagnostics::TemperatureFunction numeric;
  diagnostics::TemperatureFunction theory;
};

/// Thresholds checked by --assert on TM curves.
inline constexpr double kRdiagMaxR = 0.05;
inline constexpr double kRdiagMaxSlope = 0.5;  // 1/K

int cmd_rdiag(const RunConfig& config, const CommandOptions& opts, std::ostream& out, std::ostream& err,
              const RdiagHooks& hooks = {});

}  // namespace casimir::cli
