#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcvr {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2 };

/// Runs the command-line tool. `args` excludes the program name, e.g.
/// {"select", "--data", "spambase.data", "--theta", "0.02"}.
///
/// Subcommands: select, sweep, baseline, compare, report. Output files land in --out
/// (selection.json, selection.txt, sweep.csv, sweep.json, baseline.json, comparison.csv or
/// comparison.json, run-config.json). With --quiet only the machine-readable result goes to
/// `out`; diagnostics always go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcvr
