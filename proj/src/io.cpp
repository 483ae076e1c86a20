#include "qnls/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "qnls/reference_tables.hpp"

namespace fs = std::filesystem;

namespace qnls {

std::string format_sci(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.16e", value);
    return buffer;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    const fs::path dir = target.parent_path().empty() ? fs::path(".") : target.parent_path();
    const fs::path temp = dir / (target.filename().string() + ".tmp");

    std::error_code ec;
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + temp.string() + " for writing: " + std::strerror(errno));
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            fs::remove(temp, ec);
            throw IoError("failed writing " + temp.string());
        }
    }
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp, ec);
        throw IoError("failed to move " + temp.string() + " to " + path + ": " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path + " for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string render_error_table_csv(const ErrorTable& table) {
    const ReferenceTable* reference = reference_table(table.experiment, table.order);

    std::string out = "K";
    for (double q : table.q_values) {
        out += ",";
        out += format_sci(q);
    }
    if (reference != nullptr) {
        for (double q : table.q_values) {
            out += ",paper ";
            out += format_sci(q);
        }
    }
    out += "\n";

    for (std::size_t row = 0; row < table.step_counts.size(); ++row) {
        out += std::to_string(table.step_counts[row]);
        for (const TableCell& cell : table.cells[row]) {
            out += ",";
            out += cell.diverged() ? "DIV" : format_sci(*cell.er);
        }
        if (reference != nullptr) {
            for (double q : table.q_values) {
                const double ref = reference_er(table.experiment, table.order, q,
                                                table.step_counts[row]);
                out += ",";
                out += std::isnan(ref) ? "n/a" : format_sci(ref);
            }
        }
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

ParsedTable parse_error_table_csv(const std::string& text) {
    ParsedTable parsed;
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line)) {
        throw IoError("parse_error_table_csv: empty input");
    }
    const auto header = split_csv_line(line);
    if (header.empty() || header[0] != "K") {
        throw IoError("parse_error_table_csv: malformed header");
    }
    std::size_t reference_start = header.size();
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i].rfind("paper ", 0) == 0) {
            reference_start = i;
            break;
        }
        parsed.header_q.push_back(std::stod(header[i]));
    }

    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw IoError("parse_error_table_csv: ragged row");
        }
        parsed.step_counts.push_back(static_cast<std::size_t>(std::stoul(cells[0])));
        std::vector<std::optional<double>> computed;
        for (std::size_t i = 1; i < reference_start; ++i) {
            if (cells[i] == "DIV") {
                computed.emplace_back(std::nullopt);
            } else {
                computed.emplace_back(std::stod(cells[i]));
            }
        }
        parsed.computed.push_back(std::move(computed));
        if (reference_start < header.size()) {
            std::vector<double> reference;
            for (std::size_t i = reference_start; i < header.size(); ++i) {
                reference.push_back(cells[i] == "n/a" ? std::numeric_limits<double>::quiet_NaN()
                                                      : std::stod(cells[i]));
            }
            parsed.reference.push_back(std::move(reference));
        }
    }
    return parsed;
}

std::string render_field_dump(std::span<const FieldState> trajectory, const QGrid& grid) {
    std::string out = "# k t n x re im abs\n";
    char buffer[160];
    for (const FieldState& state : trajectory) {
        for (std::size_t n = 0; n < grid.size(); ++n) {
            const cplx u = state.values[n];
            std::snprintf(buffer, sizeof buffer, "%zu %.16e %zu %.16e %.16e %.16e %.16e\n",
                          state.time_index, state.time, n, grid.points[n], u.real(), u.imag(),
                          std::abs(u));
            out += buffer;
        }
    }
    return out;
}

std::string render_error_report_csv(const ErrorReport& report,
                                    std::span<const FieldState> trajectory) {
    std::string out = "k,t,l2_error\n";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        out += std::to_string(trajectory[i].time_index);
        out += ",";
        out += format_sci(trajectory[i].time);
        out += ",";
        out += format_sci(report.per_level[i]);
        out += "\n";
    }
    return out;
}

}  // namespace qnls
