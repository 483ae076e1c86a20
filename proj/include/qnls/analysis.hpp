#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qnls/model.hpp"
#include "qnls/qgrid.hpp"
#include "qnls/scheme.hpp"

namespace qnls {

/// Unweighted Euclidean norm (sum |X_i|^2)^{1/2}, evaluated with scaling
/// so that large entries do not overflow the intermediate squares.
double discrete_l2(std::span<const cplx> v);

/// Per-level errors ||U^k - u^k||_2 against a closed-form reference,
/// together with their maximum Er. The reference is sampled at the
/// trajectory's own times t_k = 1 - q^k.
struct ErrorReport {
    std::vector<double> per_level;  ///< one entry per trajectory state
    double er = 0.0;                ///< max of per_level
    double q = 0.0;
    std::size_t order = 0;
    std::size_t steps = 0;
    std::string tag;
};

ErrorReport error_Er(std::span<const FieldState> trajectory,
                     const std::function<cplx(double, double)>& exact,
                     const QGrid& grid, std::string tag = {});

/// Applies the discrete operator to a smooth closed-form field at (n, k):
///
///   i (u(x_n,t_{k+1}) - u(x_n,t_k))/l_k
///   + (2q/(1+q)) (q u(x_{n-1},t_k) - (1+q) u(x_n,t_k) + u(x_{n+1},t_k))/h_n^2
///   + f(u(x_n,t_k))
///
/// For a solution of the continuous equation this is the local truncation
/// error, of first order in l_k + h_n. n = 0 is rejected (needs x_{n-1}).
/// Pass a null nonlinearity to suppress the f term.
cplx truncation_error(const std::function<cplx(double, double)>& exact, QParam q,
                      std::size_t n, std::size_t k,
                      const Nonlinearity& nonlinearity = [](cplx u) { return cubic_nonlinearity(u); });

/// Index pairs (n, 2n+1) for n = n_lo..n_hi: along this line the step
/// ratio condition k >= 2n+1 holds while l_k + h_n shrinks geometrically.
std::vector<std::pair<std::size_t, std::size_t>> diagonal_index_line(std::size_t n_lo,
                                                                     std::size_t n_hi);

/// Samples (l_k + h_n, |L(u)|) and the log-log least-squares slope: the
/// measured consistency order of the scheme on the given field.
struct ConsistencyReport {
    std::vector<std::pair<double, double>> samples;  ///< (step sum, magnitude)
    double fitted_order = 0.0;
};

ConsistencyReport consistency_study(
    const std::function<cplx(double, double)>& exact, QParam q,
    std::span<const std::pair<std::size_t, std::size_t>> line,
    const Nonlinearity& nonlinearity = [](cplx u) { return cubic_nonlinearity(u); });

/// Empirical boundedness probe: evolves `trials` random initial fields
/// with sup norm at most eta and records the largest sup norm seen at any
/// level.
///
/// The run starts at time index k0 = 2N+1 when the configured K reaches
/// it, so that k >= 2n+1 holds for every row throughout — the regime in
/// which boundedness is claimed. With K < 2N+1 the regime is out of
/// reach; the probe then runs from the configured start index and simply
/// reports what happens (typically enormous values).
///
/// Initial fields draw real and imaginary parts uniformly from
/// [-eta/sqrt(2), eta/sqrt(2)] via a seeded mt19937_64 with the 53-bit
/// mantissa mapping, so results are reproducible across platforms.
struct StabilityReport {
    std::size_t trials = 0;
    double eta = 0.0;
    double ceiling = 0.0;
    std::size_t start_index = 0;   ///< k0 actually used
    double max_observed = 0.0;     ///< +inf when a trial diverged
    bool diverged = false;         ///< some trial aborted with non-finite values
    bool passed = false;           ///< max_observed <= ceiling
};

StabilityReport stability_probe(const EvolutionConfig& config, double eta,
                                std::size_t trials, std::uint64_t seed, double ceiling);

/// The two benchmark experiments.
enum class Experiment { single_soliton, two_solitons };

/// One sweep cell: Er for a given (q, K), or the divergence point when
/// the evolution aborted.
struct TableCell {
    std::optional<double> er;              ///< empty when diverged
    std::size_t divergence_index = 0;      ///< n of the first non-finite value
    std::size_t divergence_step = 0;       ///< k of the first non-finite value
    bool diverged() const { return !er.has_value(); }
};

/// Er sweep over (K, q) pairs for one experiment at fixed N — the layout
/// of the benchmark error tables: one row per K, one column per q.
struct ErrorTable {
    Experiment experiment = Experiment::single_soliton;
    std::size_t order = 0;
    std::vector<double> q_values;
    std::vector<std::size_t> step_counts;           ///< K per row
    std::vector<std::vector<TableCell>> cells;      ///< [row][column]
};

/// Runs every (q, K) cell: build grid, sample the experiment's initial
/// data at t0 = 0, evolve, and measure Er against the closed-form
/// reference (the superposition, for the pair). Diverged cells are
/// recorded, never omitted.
ErrorTable run_table(Experiment experiment, std::span<const double> q_values,
                     std::span<const std::size_t> step_counts, std::size_t order);

/// Initial data of a benchmark experiment.
InitialData experiment_data(Experiment experiment);

}  // namespace qnls
