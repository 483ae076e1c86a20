#include "qnls/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qnls {

namespace {

const SolitonConfig single_default = {0.01, 1.0, 0.1, 0.0, 0.0};
const SolitonConfig pair_first_default = {1.0, 2.0, 4.0, 0.0, 15.0};
const SolitonConfig pair_second_default = {2.25, 2.0, -4.0, 0.0, -7.5};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError(context + ": not a number: '" + value + "'");
    }
}

std::size_t parse_size(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        if (parsed < 0) throw std::invalid_argument("negative");
        return static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
        throw ConfigError(context + ": not a nonnegative integer: '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) items.push_back(trim(item));
    return items;
}

double parse_q(const std::string& value, const std::string& context) {
    const double q = parse_double(value, context);
    if (!(q > 0.0) || !(q < 1.0)) {
        throw ConfigError(context + ": q must lie strictly inside (0,1), got " + value);
    }
    return q;
}

void set_experiment(RunConfig& config, Experiment experiment) {
    config.experiment = experiment;
    if (experiment == Experiment::two_solitons) {
        config.soliton1 = pair_first_default;
        config.soliton2 = pair_second_default;
    } else {
        config.soliton1 = single_default;
    }
}

}  // namespace

std::string command_name(Command command) {
    switch (command) {
        case Command::single_soliton: return "single-soliton";
        case Command::two_solitons: return "two-solitons";
        case Command::table: return "table";
        case Command::probe: return "probe";
        case Command::consistency: return "consistency";
        case Command::dump_field: return "dump-field";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    if (name == "single-soliton") return Command::single_soliton;
    if (name == "two-solitons") return Command::two_solitons;
    if (name == "table") return Command::table;
    if (name == "probe") return Command::probe;
    if (name == "consistency") return Command::consistency;
    if (name == "dump-field") return Command::dump_field;
    throw ConfigError("unknown command '" + name + "'");
}

InitialData RunConfig::data() const {
    if (experiment == Experiment::single_soliton) {
        return InitialData::single(soliton1.params());
    }
    return InitialData::pair(soliton1.params(), soliton2.params());
}

void RunConfig::validate() const {
    if (q_values.empty()) throw ConfigError("config: q list is empty");
    for (double q : q_values) {
        if (!(q > 0.0) || !(q < 1.0)) {
            throw ConfigError("config: q must lie strictly inside (0,1), got " + std::to_string(q));
        }
    }
    if (order < 2) throw ConfigError("config: N must be at least 2");
    if (step_counts.empty()) throw ConfigError("config: K list is empty");
    if (trials < 1) throw ConfigError("config: trials must be at least 1");
    if (!(eta >= 0.0)) throw ConfigError("config: eta must be nonnegative");
    if (!(ceiling > 0.0)) throw ConfigError("config: ceiling must be positive");
    if (n_lo < 1) throw ConfigError("config: nmin must be at least 1");
    if (n_hi < n_lo + 3) throw ConfigError("config: consistency line needs at least 4 indices");
    try {
        soliton1.params();
        if (experiment == Experiment::two_solitons) soliton2.params();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
}

RunConfig default_config(Command command) {
    RunConfig config;
    config.command = command;
    config.soliton1 = single_default;
    if (command == Command::two_solitons) {
        set_experiment(config, Experiment::two_solitons);
    }
    if (command == Command::table) {
        config.q_values = {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875};
        config.step_counts = {10, 15, 20};
    }
    return config;
}

void apply_key_value(RunConfig& config, const std::string& key, const std::string& value,
                     const std::string& context) {
    auto soliton_field = [&](SolitonConfig& block, const std::string& field) -> bool {
        if (field == "a") block.a = parse_double(value, context);
        else if (field == "qs") block.qs = parse_double(value, context);
        else if (field == "c") block.c = parse_double(value, context);
        else if (field == "varphi") block.varphi = parse_double(value, context);
        else if (field == "phi") block.phi = parse_double(value, context);
        else return false;
        return true;
    };

    if (key == "command") {
        config.command = parse_command(value);
    } else if (key == "experiment") {
        if (value == "single-soliton") set_experiment(config, Experiment::single_soliton);
        else if (value == "two-solitons") set_experiment(config, Experiment::two_solitons);
        else throw ConfigError(context + ": experiment must be single-soliton or two-solitons");
    } else if (key == "q") {
        config.q_values.clear();
        for (const std::string& item : split_list(value)) {
            config.q_values.push_back(parse_q(item, context));
        }
        if (config.q_values.empty()) throw ConfigError(context + ": empty q list");
    } else if (key == "N") {
        config.order = parse_size(value, context);
    } else if (key == "K") {
        config.step_counts.clear();
        for (const std::string& item : split_list(value)) {
            config.step_counts.push_back(parse_size(item, context));
        }
        if (config.step_counts.empty()) throw ConfigError(context + ": empty K list");
    } else if (key == "out") {
        config.out_path = value;
    } else if (key == "seed") {
        config.seed = parse_size(value, context);
    } else if (key == "eta") {
        config.eta = parse_double(value, context);
    } else if (key == "trials") {
        config.trials = parse_size(value, context);
    } else if (key == "ceiling") {
        config.ceiling = parse_double(value, context);
    } else if (key == "nmin") {
        config.n_lo = parse_size(value, context);
    } else if (key == "nmax") {
        config.n_hi = parse_size(value, context);
    } else if (!key.empty() && (key.back() == '1' || key.back() == '2')) {
        SolitonConfig& block = key.back() == '1' ? config.soliton1 : config.soliton2;
        if (!soliton_field(block, key.substr(0, key.size() - 1))) {
            throw ConfigError(context + ": unknown key '" + key + "'");
        }
    } else if (soliton_field(config.soliton1, key)) {
        // unsuffixed soliton keys address the first (or only) block
    } else {
        throw ConfigError(context + ": unknown key '" + key + "'");
    }
}

void apply_config_file(RunConfig& config, const std::string& text) {
    std::istringstream stream(text);
    std::string raw;
    std::string section;
    std::size_t line_number = 0;

    while (std::getline(stream, raw)) {
        ++line_number;
        const std::string context = "config line " + std::to_string(line_number);
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(context + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "soliton" && section != "soliton1" && section != "soliton2") {
                throw ConfigError(context + ": unknown section '" + section + "'");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(context + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(context + ": missing key");
        if (value.empty()) throw ConfigError(context + ": missing value for '" + key + "'");

        if (!section.empty()) {
            const char suffix = section == "soliton2" ? '2' : '1';
            if (key != "a" && key != "qs" && key != "c" && key != "varphi" && key != "phi") {
                throw ConfigError(context + ": unknown key '" + key + "' in [" + section + "]");
            }
            key += suffix;
        }
        apply_key_value(config, key, value, context);
    }
}

}  // namespace qnls
