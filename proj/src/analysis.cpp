#include "qnls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qnls {

double discrete_l2(std::span<const cplx> v) {
    double peak = 0.0;
    for (const cplx& z : v) {
        peak = std::max(peak, std::max(std::abs(z.real()), std::abs(z.imag())));
    }
    if (peak == 0.0) return 0.0;
    if (!std::isfinite(peak)) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const cplx& z : v) {
        const double re = z.real() / peak;
        const double im = z.imag() / peak;
        sum += re * re + im * im;
    }
    return peak * std::sqrt(sum);
}

ErrorReport error_Er(std::span<const FieldState> trajectory,
                     const std::function<cplx(double, double)>& exact,
                     const QGrid& grid, std::string tag) {
    if (trajectory.empty()) {
        throw std::invalid_argument("error_Er: trajectory is empty");
    }
    ErrorReport report;
    report.q = grid.q.value();
    report.order = grid.order;
    report.steps = trajectory.back().time_index;
    report.tag = std::move(tag);
    report.per_level.reserve(trajectory.size());

    std::vector<cplx> diff(grid.size());
    for (const FieldState& state : trajectory) {
        for (std::size_t n = 0; n < grid.size(); ++n) {
            diff[n] = state.values[n] - exact(grid.points[n], state.time);
        }
        report.per_level.push_back(discrete_l2(diff));
    }
    report.er = *std::max_element(report.per_level.begin(), report.per_level.end());
    return report;
}

cplx truncation_error(const std::function<cplx(double, double)>& exact, QParam q,
                      std::size_t n, std::size_t k, const Nonlinearity& nonlinearity) {
    if (n < 1) {
        throw std::invalid_argument("truncation_error: n = 0 has no left neighbor");
    }
    const double qv = q.value();
    const double xn = std::pow(qv, static_cast<double>(n));
    const double hn = xn * (1.0 - qv);
    const double lk = (1.0 - qv) * std::pow(qv, static_cast<double>(k));
    const double tk = 1.0 - std::pow(qv, static_cast<double>(k));
    const double tk1 = 1.0 - std::pow(qv, static_cast<double>(k + 1));

    const cplx u_now = exact(xn, tk);
    const cplx time_part = cplx(0.0, 1.0) * (exact(xn, tk1) - u_now) / lk;
    const cplx stencil = qv * exact(xn / qv, tk) - (1.0 + qv) * u_now + exact(qv * xn, tk);
    const cplx space_part = (2.0 * qv / (1.0 + qv)) * stencil / (hn * hn);

    cplx value = time_part + space_part;
    if (nonlinearity) value += nonlinearity(u_now);
    return value;
}

std::vector<std::pair<std::size_t, std::size_t>> diagonal_index_line(std::size_t n_lo,
                                                                     std::size_t n_hi) {
    if (n_lo < 1 || n_hi < n_lo) {
        throw std::invalid_argument("diagonal_index_line: need 1 <= n_lo <= n_hi");
    }
    std::vector<std::pair<std::size_t, std::size_t>> line;
    line.reserve(n_hi - n_lo + 1);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        line.emplace_back(n, 2 * n + 1);
    }
    return line;
}

ConsistencyReport consistency_study(
    const std::function<cplx(double, double)>& exact, QParam q,
    std::span<const std::pair<std::size_t, std::size_t>> line,
    const Nonlinearity& nonlinearity) {
    if (line.size() < 4) {
        throw std::invalid_argument("consistency_study: need at least 4 sample indices");
    }
    const double qv = q.value();
    ConsistencyReport report;
    report.samples.reserve(line.size());
    for (const auto& [n, k] : line) {
        const double hn = std::pow(qv, static_cast<double>(n)) * (1.0 - qv);
        const double lk = (1.0 - qv) * std::pow(qv, static_cast<double>(k));
        const double magnitude = std::abs(truncation_error(exact, q, n, k, nonlinearity));
        if (!std::isfinite(magnitude)) {
            throw std::invalid_argument("consistency_study: non-finite truncation value");
        }
        report.samples.emplace_back(lk + hn, magnitude);
    }

    // least-squares slope of log|L| against log(l_k + h_n)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double count = static_cast<double>(report.samples.size());
    for (const auto& [step_sum, magnitude] : report.samples) {
        const double lx = std::log(step_sum);
        const double ly = std::log(magnitude);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = count * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0) || !std::isfinite(denom) || !std::isfinite(sxy)) {
        throw std::invalid_argument("consistency_study: degenerate fit abscissae");
    }
    report.fitted_order = (count * sxy - sx * sy) / denom;
    return report;
}

namespace {

double uniform_53bit(std::mt19937_64& gen) {
    // 53-bit mantissa mapping to [0,1); identical on every platform
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double sup_norm(std::span<const cplx> v) {
    double worst = 0.0;
    for (const cplx& z : v) worst = std::max(worst, std::abs(z));
    return worst;
}

}  // namespace

StabilityReport stability_probe(const EvolutionConfig& config, double eta,
                                std::size_t trials, std::uint64_t seed, double ceiling) {
    if (trials < 1) {
        throw std::invalid_argument("stability_probe: need at least one trial");
    }
    if (eta < 0.0) {
        throw std::invalid_argument("stability_probe: eta must be nonnegative");
    }
    EvolutionConfig run = config;
    const std::size_t regime_start = 2 * config.order + 1;
    run.start_index = regime_start <= config.steps ? regime_start : config.start_index;

    StabilityReport report;
    report.trials = trials;
    report.eta = eta;
    report.ceiling = ceiling;
    report.start_index = run.start_index;

    std::mt19937_64 gen(seed);
    const double half_width = eta / std::sqrt(2.0);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::vector<cplx> initial(config.order + 1);
        for (cplx& z : initial) {
            const double re = (2.0 * uniform_53bit(gen) - 1.0) * half_width;
            const double im = (2.0 * uniform_53bit(gen) - 1.0) * half_width;
            z = cplx(re, im);
        }
        try {
            const auto trajectory = evolve(run, std::move(initial));
            for (const FieldState& state : trajectory) {
                report.max_observed = std::max(report.max_observed, sup_norm(state.values));
            }
        } catch (const DivergenceError&) {
            report.diverged = true;
            report.max_observed = std::numeric_limits<double>::infinity();
        }
    }
    report.passed = report.max_observed <= ceiling;
    return report;
}

InitialData experiment_data(Experiment experiment) {
    if (experiment == Experiment::single_soliton) {
        return InitialData::single(benchmark_single_soliton());
    }
    auto [first, second] = benchmark_soliton_pair();
    return InitialData::pair(first, second);
}

ErrorTable run_table(Experiment experiment, std::span<const double> q_values,
                     std::span<const std::size_t> step_counts, std::size_t order) {
    if (q_values.empty() || step_counts.empty()) {
        throw std::invalid_argument("run_table: q and K lists must be nonempty");
    }
    ErrorTable table;
    table.experiment = experiment;
    table.order = order;
    table.q_values.assign(q_values.begin(), q_values.end());
    table.step_counts.assign(step_counts.begin(), step_counts.end());

    const InitialData data = experiment_data(experiment);
    const auto reference = reference_field(data);

    for (std::size_t row = 0; row < step_counts.size(); ++row) {
        std::vector<TableCell> cells;
        cells.reserve(q_values.size());
        for (double qv : q_values) {
            const QParam q(qv);
            const QGrid grid = build_grid(q, order);
            EvolutionConfig config{q, order, step_counts[row]};
            TableCell cell;
            try {
                const auto trajectory = evolve(config, initial_field(data, grid, 0.0));
                cell.er = error_Er(trajectory, reference, grid).er;
            } catch (const DivergenceError& err) {
                cell.divergence_index = err.index();
                cell.divergence_step = err.time_index();
            }
            cells.push_back(cell);
        }
        table.cells.push_back(std::move(cells));
    }
    return table;
}

}  // namespace qnls
