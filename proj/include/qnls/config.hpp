#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnls/analysis.hpp"
#include "qnls/model.hpp"

namespace qnls {

/// Raised on malformed or out-of-range configuration input; the message
/// names the offending line or flag.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command {
    single_soliton,
    two_solitons,
    table,
    probe,
    consistency,
    dump_field,
};

std::string command_name(Command command);
Command parse_command(const std::string& name);

/// Raw soliton block as staged by the parser; validated into
/// SolitonParams on demand.
struct SolitonConfig {
    double a = 0.01;
    double qs = 1.0;
    double c = 0.1;
    double varphi = 0.0;
    double phi = 0.0;

    SolitonParams params() const { return SolitonParams(a, qs, c, varphi, phi); }
};

/// Full run description. Defaults are the single-soliton benchmark
/// setting (q = 1/8, N = 20, K = 10, a = 0.01, qs = 1, c = 0.1, zero
/// phases); the table command widens the q and K lists to the canonical
/// sweep, and the two-soliton commands load the pair parameter blocks.
struct RunConfig {
    Command command = Command::single_soliton;
    Experiment experiment = Experiment::single_soliton;
    std::vector<double> q_values = {0.125};
    std::size_t order = 20;                  ///< N
    std::vector<std::size_t> step_counts = {10};  ///< K list
    SolitonConfig soliton1;
    SolitonConfig soliton2 = {2.25, 2.0, -4.0, 0.0, -7.5};
    double eta = 1.0;                        ///< probe: initial sup-norm bound
    std::size_t trials = 100;                ///< probe: random fields per q
    double ceiling = 10.0;                   ///< probe: pass threshold
    std::size_t n_lo = 2;                    ///< consistency: first line index
    std::size_t n_hi = 9;                    ///< consistency: last line index
    std::string out_path;                    ///< empty: console only
    std::uint64_t seed = 987654321;

    InitialData data() const;
    void validate() const;
};

/// Command-specific defaults (sweep lists for table, pair blocks for the
/// two-soliton experiment).
RunConfig default_config(Command command);

/// Applies a flat key=value config file ('#' comments, [soliton] /
/// [soliton1] / [soliton2] section headers) on top of the defaults.
/// Unknown keys, bad numbers and out-of-range values fail with the line
/// number.
void apply_config_file(RunConfig& config, const std::string& text);

/// Single key=value assignment from a command-line flag (key without
/// dashes, e.g. "q", "a1"); overrides file values.
void apply_key_value(RunConfig& config, const std::string& key, const std::string& value,
                     const std::string& context);

}  // namespace qnls
