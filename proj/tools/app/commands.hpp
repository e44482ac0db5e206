#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace mfdbsde::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssumptionFailed = 1,
  kExitConfigError = 2,
  kExitNotConverged = 3,
};

/// Picard solve; writes the solution CSV and the diagnostics report into the
/// output directory. Non-convergence still writes both files.
int cmd_solve(const std::filesystem::path& config, const Overrides& ov, std::ostream& out,
              std::ostream& err);

/// Assumption checks plus the theoretical contraction factor. Exit 0 iff
/// every assumption passes and the factor is below one.
int cmd_validate(const std::filesystem::path& config, const Overrides& ov, std::ostream& out,
                 std::ostream& err);

/// delta sweep; writes the sweep CSV into the output directory and echoes it.
int cmd_sweep_delta(const std::filesystem::path& config, const std::vector<double>& deltas,
                    const Overrides& ov, std::ostream& out, std::ostream& err);

/// "0,0.02,0.1" -> {0, 0.02, 0.1}. Throws ConfigFileError on bad or empty input.
std::vector<double> parse_delta_list(const std::string& text);

std::string format_assumption_report(const AssumptionReport& rep);
std::string format_diagnostics(const PicardDiagnostics& dg);

}  // namespace mfdbsde::app
