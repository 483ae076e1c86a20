#include "qnls/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>

#include <json.hpp>

#include "qnls/io.hpp"
#include "qnls/reference_tables.hpp"

namespace qnls {

namespace {

std::string short_sci(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3e", value);
    return buffer;
}

std::string experiment_name(Experiment experiment) {
    return experiment == Experiment::single_soliton ? "single-soliton" : "two-solitons";
}

}  // namespace

int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const double qv = config.q_values.front();
    const std::size_t steps = config.step_counts.front();
    const QParam q(qv);
    const QGrid grid = build_grid(q, config.order);
    const InitialData data = config.data();

    out << experiment_name(config.experiment) << " run: q=" << qv << " N=" << config.order
        << " K=" << steps << "\n";
    try {
        EvolutionConfig run{q, config.order, steps};
        const auto trajectory = evolve(run, initial_field(data, grid, 0.0));
        const ErrorReport report =
            error_Er(trajectory, reference_field(data), grid, experiment_name(config.experiment));

        for (std::size_t i = 0; i < trajectory.size(); ++i) {
            out << "k=" << trajectory[i].time_index << " t=" << short_sci(trajectory[i].time)
                << " l2_error=" << short_sci(report.per_level[i]) << "\n";
        }
        out << "Er = " << format_sci(report.er) << "\n";
        const double reference = reference_er(config.experiment, config.order, qv, steps);
        if (!std::isnan(reference)) {
            out << "paper Er = " << format_sci(reference) << "\n";
        }
        if (!config.out_path.empty()) {
            write_file_atomic(config.out_path, render_error_report_csv(report, trajectory));
            out << "wrote " << config.out_path << "\n";
        }
    } catch (const DivergenceError& div) {
        err << "run diverged: " << div.what() << "\n";
        return exit_divergence;
    } catch (const IoError& io) {
        err << io.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}

int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const ErrorTable table =
        run_table(config.experiment, config.q_values, config.step_counts, config.order);

    out << experiment_name(config.experiment) << " Er sweep, N=" << config.order << "\n";
    bool any_finite = false;
    for (std::size_t row = 0; row < table.step_counts.size(); ++row) {
        for (std::size_t col = 0; col < table.q_values.size(); ++col) {
            const TableCell& cell = table.cells[row][col];
            out << "K=" << table.step_counts[row] << " q=" << table.q_values[col] << " Er=";
            if (cell.diverged()) {
                out << "DIV (first non-finite at n=" << cell.divergence_index
                    << ", k=" << cell.divergence_step << ")";
            } else {
                out << short_sci(*cell.er);
                any_finite = true;
            }
            const double reference = reference_er(config.experiment, config.order,
                                                  table.q_values[col], table.step_counts[row]);
            if (!std::isnan(reference)) out << " paper=" << short_sci(reference);
            out << "\n";
        }
    }

    if (!config.out_path.empty()) {
        try {
            write_file_atomic(config.out_path, render_error_table_csv(table));
            out << "wrote " << config.out_path << "\n";
        } catch (const IoError& io) {
            err << io.what() << "\n";
            return exit_io;
        }
    }
    if (!any_finite) {
        err << "every cell diverged\n";
        return exit_divergence;
    }
    return exit_ok;
}

int cmd_dump_field(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const double qv = config.q_values.front();
    const std::size_t steps = config.step_counts.front();
    const QParam q(qv);
    const QGrid grid = build_grid(q, config.order);

    try {
        EvolutionConfig run{q, config.order, steps};
        const auto trajectory = evolve(run, initial_field(config.data(), grid, 0.0));
        const std::string dump = render_field_dump(trajectory, grid);
        if (config.out_path.empty()) {
            out << dump;
        } else {
            write_file_atomic(config.out_path, dump);
            out << "wrote " << config.out_path << "\n";
        }
    } catch (const DivergenceError& div) {
        err << "run diverged: " << div.what() << "\n";
        return exit_divergence;
    } catch (const IoError& io) {
        err << io.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}

int cmd_probe(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const double qv = config.q_values.front();
    const std::size_t steps = config.step_counts.front();
    const QParam q(qv);

    const CflReport cfl = cfl_diagnostic(q, config.order, steps);
    out << "step-ratio condition k >= 2n+1: full grid "
        << (cfl.full_grid_ever_trusted ? "satisfied" : "violated") << " for k >= "
        << cfl.first_fully_trusted_k << " (K=" << steps << "); max |sigma| = "
        << short_sci(cfl.worst_sigma_mag) << " at (n=" << config.order << ", k=0)\n";

    double min_margin = 0.0;
    double max_margin = 0.0;
    bool dominance_passed = true;
    for (std::size_t k = 0; k <= steps; ++k) {
        const DominanceReport report = dominance_check(assemble_matrix(q, config.order, k));
        if (k == 0 || report.worst_margin < min_margin) min_margin = report.worst_margin;
        if (k == 0 || report.worst_margin > max_margin) max_margin = report.worst_margin;
        dominance_passed = dominance_passed && report.passed;
    }
    out << "dominance margins over k <= " << steps << ": ["
        << format_sci(min_margin) << ", " << format_sci(max_margin) << "] "
        << (dominance_passed ? "pass" : "FAIL") << "\n";

    EvolutionConfig run{q, config.order, steps};
    const StabilityReport stability =
        stability_probe(run, config.eta, config.trials, config.seed, config.ceiling);
    out << "boundedness probe: " << stability.trials << " random fields, sup <= "
        << config.eta << ", start k=" << stability.start_index << ", max sup = "
        << short_sci(stability.max_observed) << " (ceiling " << config.ceiling << "): "
        << (stability.passed ? "pass" : "FAIL") << "\n";

    if (!config.out_path.empty()) {
        nlohmann::json summary;
        summary["q"] = qv;
        summary["N"] = config.order;
        summary["K"] = steps;
        summary["seed"] = config.seed;
        summary["cfl"] = {
            {"first_fully_trusted_k", cfl.first_fully_trusted_k},
            {"full_grid_ever_trusted", cfl.full_grid_ever_trusted},
            {"worst_sigma_mag", cfl.worst_sigma_mag},
        };
        auto& per_step = summary["cfl"]["per_step"];
        for (const CflRow& row : cfl.per_step) {
            per_step.push_back({{"k", row.k},
                                {"trusted_max_index", row.trusted_max_index},
                                {"max_sigma_mag", row.max_sigma_mag}});
        }
        summary["dominance"] = {
            {"passed", dominance_passed},
            {"min_margin", min_margin},
            {"max_margin", max_margin},
            {"steps_checked", steps + 1},
        };
        summary["stability"] = {
            {"passed", stability.passed},       {"max_observed", stability.max_observed},
            {"eta", stability.eta},             {"ceiling", stability.ceiling},
            {"trials", stability.trials},       {"start_index", stability.start_index},
            {"diverged", stability.diverged},
        };
        try {
            write_file_atomic(config.out_path, summary.dump(2) + "\n");
            out << "wrote " << config.out_path << "\n";
        } catch (const IoError& io) {
            err << io.what() << "\n";
            return exit_io;
        }
    }
    return exit_ok;
}

int cmd_consistency(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const double qv = config.q_values.front();
    const QParam q(qv);
    const auto line = diagonal_index_line(config.n_lo, config.n_hi);
    const ConsistencyReport report =
        consistency_study(reference_field(config.data()), q, line);

    out << "truncation samples along k = 2n+1, q=" << qv << ":\n";
    std::string csv = "n,k,step_sum,magnitude\n";
    for (std::size_t i = 0; i < line.size(); ++i) {
        const auto& [n, k] = line[i];
        const auto& [step_sum, magnitude] = report.samples[i];
        out << "n=" << n << " k=" << k << " l+h=" << short_sci(step_sum)
            << " |L(u)|=" << short_sci(magnitude) << "\n";
        csv += std::to_string(n) + "," + std::to_string(k) + "," + format_sci(step_sum) + "," +
               format_sci(magnitude) + "\n";
    }
    out << "fitted order = " << format_sci(report.fitted_order) << "\n";

    if (!config.out_path.empty()) {
        try {
            write_file_atomic(config.out_path, csv);
            out << "wrote " << config.out_path << "\n";
        } catch (const IoError& io) {
            err << io.what() << "\n";
            return exit_io;
        }
    }
    return exit_ok;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
        case Command::single_soliton:
        case Command::two_solitons:
            return cmd_experiment(config, out, err);
        case Command::table:
            return cmd_table(config, out, err);
        case Command::probe:
            return cmd_probe(config, out, err);
        case Command::consistency:
            return cmd_consistency(config, out, err);
        case Command::dump_field:
            return cmd_dump_field(config, out, err);
    }
    err << "unhandled command\n";
    return exit_usage;
}

}  // namespace qnls
