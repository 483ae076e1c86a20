#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnls/analysis.hpp"

namespace qnls {

/// Raised by file writers; mapped to the I/O exit code by the CLI.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scientific notation with 17 significant digits — enough for an exact
/// double round-trip.
std::string format_sci(double value);

/// Writes content through a temporary file in the target directory and
/// renames it into place, so a failed write leaves nothing behind.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// CSV rendering of an Er sweep: header row with the q values as column
/// labels, one row per K, and — when published reference values exist for
/// the experiment and order — a companion "paper" column set. Diverged
/// cells print as DIV. Comma separated, LF line endings.
std::string render_error_table_csv(const ErrorTable& table);

/// Parsed counterpart of render_error_table_csv, for round-trip checks:
/// cell values by [row][column], empty optional for DIV.
struct ParsedTable {
    std::vector<double> header_q;
    std::vector<std::size_t> step_counts;
    std::vector<std::vector<std::optional<double>>> computed;
    std::vector<std::vector<double>> reference;  ///< empty when absent
};

ParsedTable parse_error_table_csv(const std::string& text);

/// Plain-text field dump: one row per (k, n) with columns
/// k, t_k, n, x_n, Re(U), Im(U), |U|. Header line prefixed with '#',
/// whitespace separated, suitable for any plotting tool.
std::string render_field_dump(std::span<const FieldState> trajectory, const QGrid& grid);

/// Per-level error report as CSV (k, t, l2_error).
std::string render_error_report_csv(const ErrorReport& report,
                                    std::span<const FieldState> trajectory);

}  // namespace qnls
