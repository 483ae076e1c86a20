#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnls/commands.hpp"
#include "qnls/io.hpp"

namespace {

struct SubcommandState {
    qnls::Command command;
    CLI::App* app = nullptr;
    std::string config_path;
    std::map<std::string, std::string> values;  // key -> raw value, keys as in apply_key_value
};

void add_option(SubcommandState& state, const std::string& key, const std::string& description) {
    state.app->add_option("--" + key, state.values[key], description);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qnls: explicit solver for the cubic nonlinear Schrodinger equation on the "
                 "geometric grid x_n = q^n (index n increases as x decreases toward 0)"};
    app.require_subcommand(1);

    std::vector<SubcommandState> subs;
    subs.reserve(6);

    auto make_sub = [&](qnls::Command command, const std::string& description) -> SubcommandState& {
        subs.emplace_back();
        SubcommandState& state = subs.back();
        state.command = command;
        state.app = app.add_subcommand(qnls::command_name(command), description);
        state.app->add_option("--config", state.config_path,
                              "key=value config file; flags override file values");
        add_option(state, "q", "quantum parameter(s) in (0,1), comma separated");
        add_option(state, "N", "space truncation order");
        add_option(state, "K", "final time index(es), comma separated");
        add_option(state, "out", "output file path");
        add_option(state, "seed", "random seed");
        return state;
    };

    auto add_soliton_flags = [&](SubcommandState& state, bool suffixed) {
        if (suffixed) {
            for (const char* suffix : {"1", "2"}) {
                add_option(state, std::string("a") + suffix, "soliton amplitude constant");
                add_option(state, std::string("qs") + suffix, "soliton amplitude normalizer");
                add_option(state, std::string("c") + suffix, "soliton speed");
                add_option(state, std::string("varphi") + suffix, "carrier phase");
                add_option(state, std::string("phi") + suffix, "envelope shift");
            }
        } else {
            add_option(state, "a", "soliton amplitude constant");
            add_option(state, "qs", "soliton amplitude normalizer");
            add_option(state, "c", "soliton speed");
            add_option(state, "varphi", "carrier phase");
            add_option(state, "phi", "envelope shift");
        }
    };

    {
        auto& single = make_sub(qnls::Command::single_soliton,
                                "evolve the single-soliton benchmark and report per-level errors");
        add_soliton_flags(single, false);
    }
    {
        auto& two = make_sub(qnls::Command::two_solitons,
                             "evolve the counter-propagating soliton pair and report errors");
        add_soliton_flags(two, true);
    }
    {
        auto& table = make_sub(qnls::Command::table, "Er sweep over q and K lists, CSV output");
        add_option(table, "experiment", "single-soliton or two-solitons");
        add_soliton_flags(table, false);
        add_soliton_flags(table, true);
    }
    {
        auto& probe = make_sub(qnls::Command::probe,
                               "solvability, dominance and boundedness diagnostics");
        add_option(probe, "eta", "initial sup-norm bound for random fields");
        add_option(probe, "trials", "number of random initial fields");
        add_option(probe, "ceiling", "pass threshold for the observed sup norm");
    }
    {
        auto& consistency = make_sub(qnls::Command::consistency,
                                     "truncation-error order study along the line k = 2n+1");
        add_option(consistency, "experiment", "single-soliton or two-solitons");
        add_option(consistency, "nmin", "first line index (default 2)");
        add_option(consistency, "nmax", "last line index (default 9)");
        add_soliton_flags(consistency, false);
    }
    {
        auto& dump = make_sub(qnls::Command::dump_field,
                              "full space-time field dump (k, t, n, x, Re, Im, |U|)");
        add_option(dump, "experiment", "single-soliton or two-solitons");
        add_soliton_flags(dump, false);
        add_soliton_flags(dump, true);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& parse_error) {
        app.exit(parse_error);
        return qnls::exit_usage;
    }

    const SubcommandState* active = nullptr;
    for (const SubcommandState& state : subs) {
        if (state.app->parsed()) active = &state;
    }
    if (active == nullptr) {
        std::cerr << "no command given\n";
        return qnls::exit_usage;
    }

    try {
        qnls::RunConfig config = qnls::default_config(active->command);
        if (active->app->count("--config") > 0) {
            qnls::apply_config_file(config, qnls::read_file(active->config_path));
        }
        // experiment first: it resets the soliton blocks to that
        // experiment's defaults before per-field overrides land
        if (auto it = active->values.find("experiment");
            it != active->values.end() && active->app->count("--experiment") > 0) {
            qnls::apply_key_value(config, "experiment", it->second, "--experiment");
        }
        for (const auto& [key, value] : active->values) {
            if (key == "experiment") continue;
            if (active->app->count("--" + key) > 0) {
                qnls::apply_key_value(config, key, value, "--" + key);
            }
        }
        config.command = active->command;
        config.validate();
        return qnls::run_command(config, std::cout, std::cerr);
    } catch (const qnls::ConfigError& config_error) {
        std::cerr << config_error.what() << "\n";
        return qnls::exit_usage;
    } catch (const qnls::IoError& io_error) {
        std::cerr << io_error.what() << "\n";
        return qnls::exit_io;
    } catch (const std::exception& unexpected) {
        std::cerr << "error: " << unexpected.what() << "\n";
        return qnls::exit_usage;
    }
}
