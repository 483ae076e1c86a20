#include <doctest.h>

#include <cmath>
#include <random>

#include "qnls/analysis.hpp"

using namespace qnls;

namespace {

std::vector<cplx> random_vector(std::mt19937_64& gen, std::size_t count, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<cplx> v(count);
    for (cplx& z : v) z = cplx(dist(gen), dist(gen));
    return v;
}

}  // namespace

TEST_CASE("discrete_l2 basics") {
    CHECK(discrete_l2(std::vector<cplx>{}) == 0.0);
    CHECK(discrete_l2(std::vector<cplx>{cplx(0, 0), cplx(0, 0)}) == 0.0);
    CHECK(discrete_l2(std::vector<cplx>{cplx(3, 0), cplx(0, 4)}) ==
          doctest::Approx(5.0).epsilon(1e-15));
    CHECK(discrete_l2(std::vector<cplx>(4, cplx(1, 0))) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("discrete_l2 does not overflow on huge entries") {
    std::vector<cplx> huge(9, cplx(1e200, 0.0));
    CHECK(discrete_l2(huge) == doctest::Approx(3e200).epsilon(1e-14));
    std::vector<cplx> inf_entry = {cplx(std::numeric_limits<double>::infinity(), 0.0)};
    CHECK(std::isinf(discrete_l2(inf_entry)));
}

TEST_CASE("discrete_l2 norm properties on random vectors") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> scalars(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto u = random_vector(gen, 12, 2.0);
        const auto v = random_vector(gen, 12, 2.0);
        std::vector<cplx> sum(12);
        for (std::size_t i = 0; i < 12; ++i) sum[i] = u[i] + v[i];
        CHECK(discrete_l2(sum) <= discrete_l2(u) + discrete_l2(v) + 1e-12);

        const cplx alpha(scalars(gen), scalars(gen));
        std::vector<cplx> scaled(12);
        for (std::size_t i = 0; i < 12; ++i) scaled[i] = alpha * u[i];
        CHECK(std::abs(discrete_l2(scaled) - std::abs(alpha) * discrete_l2(u)) < 1e-12);
    }
}

TEST_CASE("error_Er: trajectory sampled from the reference has zero error") {
    const QGrid grid = build_grid(QParam(0.5), 5);
    const SolitonParams p = benchmark_single_soliton();
    auto exact = [&p](double x, double t) { return soliton_eval(p, x, t); };

    std::vector<FieldState> trajectory;
    for (std::size_t k = 0; k <= 3; ++k) {
        FieldState state;
        state.time_index = k;
        state.time = 1.0 - std::pow(0.5, double(k));
        state.values.resize(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n) {
            state.values[n] = exact(grid.points[n], state.time);
        }
        trajectory.push_back(state);
    }
    const ErrorReport report = error_Er(trajectory, exact, grid, "self");
    CHECK(report.er == 0.0);
    for (double e : report.per_level) CHECK(e == 0.0);
    CHECK(report.tag == "self");
}

TEST_CASE("error_Er reduces to the norm against a zero reference") {
    const QGrid grid = build_grid(QParam(0.5), 1);
    FieldState state;
    state.values = {cplx(3, 0), cplx(0, 4)};
    const std::vector<FieldState> trajectory = {state};
    auto zero = [](double, double) { return cplx(0, 0); };
    const ErrorReport report = error_Er(trajectory, zero, grid);
    CHECK(report.er == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(error_Er({}, zero, grid), std::invalid_argument);
}

TEST_CASE("truncation error: zero field, quadratic exactness, n = 0 rejected") {
    auto zero = [](double, double) { return cplx(0, 0); };
    CHECK(std::abs(truncation_error(zero, QParam(0.5), 3, 7)) == 0.0);

    // u = x^2 is time independent; with the nonlinearity suppressed the
    // spatial part contributes exactly the value 2
    auto square = [](double x, double) { return cplx(x * x, 0.0); };
    const cplx value = truncation_error(square, QParam(0.375), 3, 9, {});
    CHECK(std::abs(value - cplx(2.0)) < 1e-12);

    CHECK_THROWS_AS(truncation_error(zero, QParam(0.5), 0, 3), std::invalid_argument);
}

TEST_CASE("truncation error decays along the line k = 2n+1 for the soliton") {
    const SolitonParams p = benchmark_single_soliton();
    auto exact = [&p](double x, double t) { return soliton_eval(p, x, t); };
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t n = 3; n <= 8; ++n) {
        const double magnitude = std::abs(truncation_error(exact, QParam(0.5), n, 2 * n + 1));
        CHECK(magnitude < previous);
        previous = magnitude;
    }
}

TEST_CASE("discrete operator is exact on x^2 + 2it, so truncation vanishes") {
    // u_tt = 0 and u_xxx = 0: the time difference is exact on linear-in-t
    // data and the spatial stencil is exact on quadratics, so with the
    // nonlinearity off every sample sits at roundoff level
    auto exact = [](double x, double t) { return cplx(x * x, 2.0 * t); };
    const auto line = diagonal_index_line(2, 9);
    for (const auto& [n, k] : line) {
        CHECK(std::abs(truncation_error(exact, QParam(0.5), n, k, {})) < 1e-10);
    }
}

TEST_CASE("consistency study measures first order on the soliton") {
    const SolitonParams p = benchmark_single_soliton();
    auto exact = [&p](double x, double t) { return soliton_eval(p, x, t); };
    const auto line = diagonal_index_line(2, 9);
    const ConsistencyReport report = consistency_study(exact, QParam(0.5), line);
    REQUIRE(report.samples.size() == 8);
    CHECK(report.fitted_order >= 0.9);
    CHECK(report.fitted_order < 1.3);
    // step sums shrink geometrically along the line
    for (std::size_t i = 1; i < report.samples.size(); ++i) {
        CHECK(report.samples[i].first < report.samples[i - 1].first);
    }
}

TEST_CASE("consistency study rejects degenerate inputs") {
    auto exact = [](double x, double t) { return cplx(x, t); };
    const auto short_line = diagonal_index_line(2, 4);
    CHECK_THROWS_AS(consistency_study(exact, QParam(0.5), short_line), std::invalid_argument);

    // four copies of the same index: zero spread in the abscissae
    std::vector<std::pair<std::size_t, std::size_t>> degenerate(4, {3, 7});
    CHECK_THROWS_AS(consistency_study(exact, QParam(0.5), degenerate), std::invalid_argument);
}

TEST_CASE("stability probe: zero bound keeps everything at zero") {
    EvolutionConfig config{QParam(0.5), 4, 12};
    config.nonlinearity = {};
    const StabilityReport report = stability_probe(config, 0.0, 5, 99, 10.0);
    CHECK(report.max_observed == 0.0);
    CHECK(report.passed);
    CHECK_FALSE(report.diverged);
    CHECK(report.start_index == 9);  // 2N+1 regime entry
}

TEST_CASE("stability probe passes in the trusted regime at small N") {
    for (double qv : {0.125, 0.25}) {
        EvolutionConfig config{QParam(qv), 5, 20};
        const StabilityReport report = stability_probe(config, 1.0, 100, 20260808, 10.0);
        CHECK(report.start_index == 11);
        CHECK(report.passed);
        CHECK_FALSE(report.diverged);
        CHECK(report.max_observed <= 1.5);  // bounded, in fact barely above eta
        CHECK(report.max_observed > 0.0);
    }
}

TEST_CASE("stability probe reports runaway growth outside the regime") {
    // K < 2N+1: the bounded regime is unreachable, so the probe runs from
    // k = 0 and simply reports what it sees
    EvolutionConfig config{QParam(0.875), 50, 10};
    const StabilityReport report = stability_probe(config, 1.0, 3, 7, 10.0);
    CHECK(report.start_index == 0);
    CHECK_FALSE(report.passed);
    CHECK(report.max_observed > 1e10);
}

TEST_CASE("stability probe is deterministic in the seed") {
    EvolutionConfig config{QParam(0.25), 5, 20};
    const StabilityReport first = stability_probe(config, 1.0, 20, 424242, 10.0);
    const StabilityReport second = stability_probe(config, 1.0, 20, 424242, 10.0);
    CHECK(first.max_observed == second.max_observed);
    const StabilityReport other = stability_probe(config, 1.0, 20, 424243, 10.0);
    CHECK(first.max_observed != other.max_observed);
}

TEST_CASE("run_table: a 1x1 sweep equals a direct error measurement") {
    const double qv = 0.5;
    const std::size_t order = 3, steps = 2;
    const std::vector<double> qs = {qv};
    const std::vector<std::size_t> ks = {steps};
    const ErrorTable table = run_table(Experiment::single_soliton, qs, ks, order);
    REQUIRE(table.cells.size() == 1);
    REQUIRE(table.cells[0].size() == 1);
    REQUIRE_FALSE(table.cells[0][0].diverged());

    const QGrid grid = build_grid(QParam(qv), order);
    const InitialData data = experiment_data(Experiment::single_soliton);
    EvolutionConfig config{QParam(qv), order, steps};
    const auto trajectory = evolve(config, initial_field(data, grid, 0.0));
    const ErrorReport direct = error_Er(trajectory, reference_field(data), grid);
    CHECK(*table.cells[0][0].er == direct.er);
}

TEST_CASE("run_table records divergence instead of crashing") {
    const std::vector<double> qs = {0.125, 0.5};
    const std::vector<std::size_t> ks = {10};
    const ErrorTable table = run_table(Experiment::single_soliton, qs, ks, 20);
    REQUIRE(table.cells.size() == 1);
    for (const TableCell& cell : table.cells[0]) {
        CHECK(cell.diverged());
        CHECK(cell.divergence_step >= 1);
        CHECK(cell.divergence_step <= 10);
    }
    CHECK_THROWS_AS(run_table(Experiment::single_soliton, {}, ks, 20), std::invalid_argument);
}
