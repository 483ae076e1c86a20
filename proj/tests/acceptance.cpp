// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qnls/analysis.hpp"
#include "qnls/commands.hpp"
#include "qnls/io.hpp"
#include "qnls/model.hpp"
#include "qnls/qgrid.hpp"
#include "qnls/reference_tables.hpp"
#include "qnls/scheme.hpp"

using namespace qnls;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::vector<std::string> notes;

void report(int criterion, const std::string& name, bool passed, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s — %s\n", passed ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str());
    if (!passed) ++failures;
    for (const std::string& note : notes) std::printf("        %s\n", note.c_str());
    notes.clear();
}

std::string sci(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3e", v);
    return buffer;
}

const std::vector<double> q_grid = {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875};

fs::path out_dir() {
    fs::create_directories("acceptance_out");
    return "acceptance_out";
}

// --- criterion 1 -----------------------------------------------------------

void criterion_quadratic_exactness() {
    double worst = 0.0;
    for (double qv : q_grid) {
        const QGrid grid = build_grid(QParam(qv), 20);
        std::vector<cplx> field(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n) {
            field[n] = grid.points[n] * grid.points[n];
        }
        for (std::size_t n = 1; n < grid.order; ++n) {
            worst = std::max(worst, std::abs(scaled_discrete_laplacian(grid, field, n) - cplx(2.0)));
        }
    }
    report(1, "quadratic exactness of the scaled discrete laplacian", worst < 1e-12,
           "max |value - 2| = " + sci(worst) + " over all q, interior n (N=20)");
}

// --- criterion 2 -----------------------------------------------------------

void criterion_monomial_derivative() {
    std::mt19937_64 gen(20260808);
    std::uniform_real_distribution<double> mag(0.1, 2.0);
    double worst = 0.0;
    for (double qv : q_grid) {
        const QParam q(qv);
        for (int m = 1; m <= 5; ++m) {
            auto monomial = [m](double x) { return std::pow(x, m); };
            double bracket = 0.0;  // [m]_q = 1 + q + ... + q^{m-1}
            for (int j = 0; j < m; ++j) bracket += std::pow(qv, j);
            for (int trial = 0; trial < 20; ++trial) {
                const double x = (trial % 2 == 0 ? 1.0 : -1.0) * mag(gen);
                const double expected = bracket * std::pow(x, m - 1);
                const double got = q_derivative(monomial, x, q);
                worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
            }
        }
    }
    report(2, "monomial derivative identity D_q x^m = [m]_q x^{m-1}", worst < 1e-12,
           "max relative error = " + sci(worst) + " (m = 1..5, 20 random points per q)");
}

// --- criterion 3 -----------------------------------------------------------

void criterion_matrix_identities() {
    double worst_row_sum = 0.0;
    double worst_margin_dev = 0.0;
    for (double qv : q_grid) {
        for (std::size_t k = 0; k <= 20; ++k) {
            const StepMatrix m = assemble_matrix(QParam(qv), 20, k);
            for (std::size_t n = 0; n < m.order(); ++n) {
                worst_row_sum = std::max(worst_row_sum, std::abs(m.row_sum(n) - cplx(1.0)));
            }
            for (std::size_t n = 0; n <= m.order(); ++n) {
                // |diag|^2 - ((1+q)|sigma|)^2 (plain |sigma_0|^2 at row 0),
                // evaluated in factored form so the squares cannot swamp it
                const double weight =
                    n == 0 ? std::abs(m.sigma[0])
                           : std::abs(m.lower[n]) + std::abs(m.sigma[n]);
                const double im = std::abs(m.diag[n].imag());
                const double re = m.diag[n].real();
                const double margin = re * re + (im - weight) * (im + weight);
                worst_margin_dev = std::max(worst_margin_dev, std::abs(margin - 1.0));
            }
            const DominanceReport dom = dominance_check(m);
            worst_margin_dev = std::max(worst_margin_dev, std::abs(dom.worst_margin - 1.0));
        }
    }
    report(3, "row sums and dominance margins of the truncated matrix",
           worst_row_sum < 1e-14 && worst_margin_dev < 1e-12,
           "max |row sum - 1| = " + sci(worst_row_sum) + ", max |margin - 1| = " +
               sci(worst_margin_dev) + " (all q, k <= 20, N=20)");
}

// --- criterion 4 -----------------------------------------------------------

void criterion_free_evolution() {
    const std::size_t order = 10;
    EvolutionConfig config{QParam(0.5), order, 5};
    config.nonlinearity = {};
    const auto trajectory = evolve(config, std::vector<cplx>(order + 1, cplx(1.0, 0.0)));
    double worst = 0.0;
    for (std::size_t m = 1; m <= 5; ++m) {
        for (std::size_t n = 0; n + m + 1 <= order; ++n) {  // n <= N-1-m
            worst = std::max(worst, std::abs(trajectory[m].values[n] - cplx(1.0)));
        }
    }
    report(4, "free evolution preserves constants away from the truncated row", worst < 1e-13,
           "max deviation at indices <= N-1-m over m <= 5 steps: " + sci(worst));
}

// --- criterion 5 -----------------------------------------------------------

void criterion_soliton_residual() {
    const double residual =
        continuous_residual(benchmark_single_soliton(), residual_lattice(5, 5), 1e-3);
    report(5, "closed-form solution satisfies the cubic equation", residual < 1e-6,
           "max finite-difference residual = " + sci(residual) + " (5x5 lattice, h_fd = 1e-3)");
}

// --- criterion 6 -----------------------------------------------------------

void criterion_consistency_order() {
    const SolitonParams p = benchmark_single_soliton();
    auto exact = [&p](double x, double t) { return soliton_eval(p, x, t); };
    const auto line = diagonal_index_line(2, 9);
    const ConsistencyReport study = consistency_study(exact, QParam(0.5), line);
    report(6, "measured consistency order along k = 2n+1", study.fitted_order >= 0.9,
           "fitted log-log slope = " + sci(study.fitted_order) + " (threshold 0.9)");
}

// --- criterion 7 -----------------------------------------------------------

void criterion_stability_probe() {
    bool passed = true;
    std::string detail;
    for (double qv : {0.125, 0.25}) {
        EvolutionConfig config{QParam(qv), 5, 20};
        const StabilityReport probe = stability_probe(config, 1.0, 100, 20260808, 10.0);
        passed = passed && probe.passed && !probe.diverged;
        if (!detail.empty()) detail += "; ";
        detail += "q=" + sci(qv) + ": max sup = " + sci(probe.max_observed) +
                  " from k=" + std::to_string(probe.start_index);
    }
    report(7, "random-field boundedness probe (N=5, K=20, 100 trials, ceiling 10)", passed,
           detail);
}

// --- criterion 8 -----------------------------------------------------------

void criterion_single_soliton_table() {
    RunConfig config = default_config(Command::table);
    config.out_path = (out_dir() / "single_table.csv").string();
    std::ostringstream out, err;
    cmd_table(config, out, err);

    bool complete = false;
    bool trend = true;
    std::string trend_detail;
    ParsedTable parsed;
    try {
        parsed = parse_error_table_csv(read_file(config.out_path));
        complete = parsed.step_counts == std::vector<std::size_t>({10, 15, 20}) &&
                   parsed.header_q.size() == 7 && parsed.computed.size() == 3 &&
                   !parsed.reference.empty();
    } catch (const std::exception& ex) {
        notes.push_back(std::string("table emission failed: ") + ex.what());
    }

    for (double qv : {0.125, 0.25}) {
        std::size_t column = 0;
        while (column < parsed.header_q.size() && parsed.header_q[column] != qv) ++column;
        std::string cells = "q=" + sci(qv) + ": ";
        bool finite = complete;
        std::vector<double> ers;
        for (std::size_t row = 0; complete && row < 3; ++row) {
            const auto& cell = parsed.computed[row][column];
            if (cell.has_value()) {
                ers.push_back(*cell);
                cells += sci(*cell);
            } else {
                finite = false;
                cells += "DIV";
            }
            cells += row < 2 ? " -> " : "";
        }
        bool decreasing = finite && ers.size() == 3 && ers[0] > ers[1] && ers[1] > ers[2];
        trend = trend && decreasing;
        if (!trend_detail.empty()) trend_detail += "; ";
        trend_detail += cells;
        // informational: order-of-magnitude comparison with the published column
        if (qv == 0.125) {
            notes.push_back("published q=0.125 column: 1.170e-05 -> 2.010e-06 -> 1.270e-07 "
                            "(computed: " + cells.substr(cells.find(' ') + 1) + ")");
        }
    }
    notes.push_back("sweep emitted to " + config.out_path +
                    " with computed and published columns side by side");
    report(8, "single-soliton sweep completes and Er falls with K for q in {1/8, 1/4}",
           complete && trend, trend_detail.empty() ? "table missing" : trend_detail);
}

// --- criterion 9 -----------------------------------------------------------

// local maxima of |U| per time level from a dump, matched across levels
int visible_ridges(const std::string& dump) {
    std::istringstream lines(dump);
    std::string line;
    std::getline(lines, line);  // header
    std::size_t k_col, n_col;
    double t_col, x_col, re, im, abs_col;
    std::size_t current_level = SIZE_MAX;
    std::vector<std::pair<double, double>> level;  // (x ascending later)
    int most_maxima = 0;
    auto flush = [&] {
        if (level.size() < 3) return;
        // rows arrive with x descending; reverse to ascending
        std::vector<std::pair<double, double>> xs(level.rbegin(), level.rend());
        int maxima = 0;
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            if (xs[i].second > xs[i - 1].second && xs[i].second > xs[i + 1].second) ++maxima;
        }
        most_maxima = std::max(most_maxima, maxima);
        level.clear();
    };
    while (lines >> k_col >> t_col >> n_col >> x_col >> re >> im >> abs_col) {
        if (k_col != current_level) {
            flush();
            current_level = k_col;
        }
        level.emplace_back(x_col, abs_col);
    }
    flush();
    return most_maxima;
}

void criterion_two_soliton_run() {
    RunConfig config = default_config(Command::table);
    apply_key_value(config, "experiment", "two-solitons", "acceptance");
    config.out_path = (out_dir() / "two_table.csv").string();
    std::ostringstream out, err;
    cmd_table(config, out, err);

    bool layout = false;
    try {
        const ParsedTable parsed = parse_error_table_csv(read_file(config.out_path));
        layout = parsed.step_counts == std::vector<std::size_t>({10, 15, 20}) &&
                 parsed.header_q.size() == 7 && !parsed.reference.empty();
    } catch (const std::exception& ex) {
        notes.push_back(std::string("table emission failed: ") + ex.what());
    }

    // field dump for the pair at the sweep setting
    RunConfig dump_config = default_config(Command::dump_field);
    apply_key_value(dump_config, "experiment", "two-solitons", "acceptance");
    dump_config.out_path = (out_dir() / "two_dump.txt").string();
    std::ostringstream dump_out, dump_err;
    const int dump_code = cmd_dump_field(dump_config, dump_out, dump_err);

    bool ridges = false;
    if (dump_code == exit_ok) {
        const int maxima = visible_ridges(read_file(dump_config.out_path));
        ridges = maxima >= 2;
        notes.push_back("dump shows at most " + std::to_string(maxima) +
                        " interior |U| maxima per level");
    } else {
        std::string why = dump_err.str().substr(0, 96);
        while (!why.empty() && (why.back() == '\n' || why.back() == '\r')) why.pop_back();
        notes.push_back("field dump unavailable: " + why);
    }
    // geometry of the pair on this domain: envelope centers -phi/sqrt(a) + c t
    const auto [first, second] = benchmark_soliton_pair();
    const double c1_start = -first.phi() / std::sqrt(first.a());
    const double c2_start = -second.phi() / std::sqrt(second.a());
    notes.push_back("envelope centers travel " + sci(c1_start) + " -> " +
                    sci(c1_start + first.c()) + " and " + sci(c2_start) + " -> " +
                    sci(c2_start + second.c()) +
                    " over t in [0,1]; neither enters the unit interval before t = 1");

    report(9, "two-soliton sweep completes; dump shows two counter-drifting ridges",
           layout && ridges,
           std::string("table layout ") + (layout ? "ok" : "missing") +
               ", opposite-drift ridges " + (ridges ? "found" : "not observable"));
}

// --- criterion 10 ----------------------------------------------------------

void criterion_reproducibility() {
    bool identical = true;
    std::string detail;

    // the benchmark sweep (all cells diverge, still byte-stable output)
    {
        RunConfig config = default_config(Command::table);
        std::ostringstream sink;
        config.out_path = (out_dir() / "repro_a.csv").string();
        cmd_table(config, sink, sink);
        const std::string first = read_file(config.out_path);
        config.out_path = (out_dir() / "repro_b.csv").string();
        cmd_table(config, sink, sink);
        identical = identical && first == read_file(config.out_path);
        detail += "sweep CSV";
    }
    // a finite dump
    {
        RunConfig config = default_config(Command::dump_field);
        config.q_values = {0.5};
        config.order = 6;
        config.step_counts = {4};
        std::ostringstream sink;
        config.out_path = (out_dir() / "repro_a.txt").string();
        cmd_dump_field(config, sink, sink);
        const std::string first = read_file(config.out_path);
        config.out_path = (out_dir() / "repro_b.txt").string();
        cmd_dump_field(config, sink, sink);
        identical = identical && first == read_file(config.out_path);
        detail += ", field dump";
    }
    // the probe summary with its seeded random fields
    {
        RunConfig config = default_config(Command::probe);
        config.q_values = {0.125};
        config.order = 5;
        config.step_counts = {20};
        std::ostringstream sink;
        config.out_path = (out_dir() / "repro_a.json").string();
        cmd_probe(config, sink, sink);
        const std::string first = read_file(config.out_path);
        config.out_path = (out_dir() / "repro_b.json").string();
        cmd_probe(config, sink, sink);
        identical = identical && first == read_file(config.out_path);
        detail += ", probe JSON";
    }
    report(10, "identical config and seed give byte-identical outputs", identical, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_quadratic_exactness();
    criterion_monomial_derivative();
    criterion_matrix_identities();
    criterion_free_evolution();
    criterion_soliton_residual();
    criterion_consistency_order();
    criterion_stability_probe();
    criterion_single_soliton_table();
    criterion_two_soliton_run();
    criterion_reproducibility();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
