#pragma once

#include <ostream>

#include "qnls/config.hpp"

namespace qnls {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;       ///< usage or config error
inline constexpr int exit_divergence = 2;  ///< every requested run diverged
inline constexpr int exit_io = 3;

/// Dispatches a validated config to its command implementation. Output
/// files are written atomically; diagnostics go to `err`. Returns one of
/// the exit codes above.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// One evolution of the configured experiment (first q, first K):
/// per-level errors and Er on the console, the same table as CSV when an
/// output path is set.
int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Er sweep over the configured q and K lists; CSV on disk plus a
/// console rendition, with published reference values alongside where
/// they exist. Diverged cells are printed as DIV; the exit code is
/// nonzero only when every cell diverged.
int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full space-time dump of one evolution (columns k, t, n, x, Re, Im,
/// |U|), written to the output path or the console.
int cmd_dump_field(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Solvability and boundedness diagnostics for the configured (q, N, K):
/// step-ratio report, dominance margins across all time indices, and the
/// random-field boundedness probe. Writes a JSON summary when an output
/// path is set.
int cmd_probe(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Truncation-error samples along the line k = 2n+1 against the
/// experiment's closed-form solution, with the fitted log-log order.
int cmd_consistency(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qnls
