#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qnls/model.hpp"
#include "qnls/qgrid.hpp"

namespace qnls {

/// Per-row, per-step coefficients of the explicit update.
///
/// delta is the step ratio (2q/(1+q)) l_k / h_n^2, which collapses to
/// (2q/((1+q)(1-q))) q^{k-2n} on the geometric grids l_k = (1-q) q^k,
/// h_n = q^n (1-q). sigma = i delta is pure imaginary and
/// beta = 1 - (1+q) sigma, so |beta|^2 = 1 + (1+q)^2 delta^2.
struct SchemeCoeffs {
    double delta;
    cplx sigma;
    cplx beta;
};

SchemeCoeffs coeff(QParam q, std::size_t n, std::size_t k);

/// Tridiagonal update matrix for one time step, truncated to order N.
///
/// Bands are indexed by row: lower[n] sits at column n-1 (rows 1..N, value
/// q sigma_n), diag[n] is 1 - sigma_0 at row 0 and beta_n elsewhere, and
/// upper[n] sits at column n+1 (rows 0..N-1, value sigma_n). lower[0] and
/// upper[N] are unused zeros. Row N drops the sigma_N U_{N+1} term, so its
/// sum is 1 - sigma_N while rows 0..N-1 sum to exactly 1.
///
/// sigma keeps the generating coefficient of each row; assembly fills it,
/// and step() reads it. Matrices built by hand for diagnostics only need
/// the bands.
struct StepMatrix {
    double q = 0.0;
    std::size_t time_index = 0;
    std::vector<cplx> lower;
    std::vector<cplx> diag;
    std::vector<cplx> upper;
    std::vector<cplx> sigma;

    std::size_t size() const { return diag.size(); }
    std::size_t order() const { return diag.size() - 1; }

    cplx row_sum(std::size_t n) const;
    std::vector<cplx> apply(std::span<const cplx> v) const;
};

/// Assembles the truncated update matrix for time index k (N >= 2).
StepMatrix assemble_matrix(QParam q, std::size_t order, std::size_t k);

/// Solution vector at one time level. time follows the grid rule
/// t_k = t0 + (1 - q^k); the horizon [0,1] is approached as k grows.
struct FieldState {
    std::vector<cplx> values;
    std::size_t time_index = 0;
    double time = 0.0;
};

using Nonlinearity = std::function<cplx(cplx)>;

/// Evolution setup. `steps` is the final time index K: a run produces the
/// states k = start_index..K. K = 0 is accepted and yields just the
/// initial state. start_index defaults to 0; the stability probe raises
/// it to enter the regime where k >= 2n+1 holds for every row (see
/// analysis.hpp).
struct EvolutionConfig {
    QParam q;
    std::size_t order;            ///< N, space truncation order (>= 2)
    std::size_t steps;            ///< K, final time index
    std::size_t start_index = 0;  ///< first time index of the run
    double t0 = 0.0;
    Nonlinearity nonlinearity = [](cplx u) { return cubic_nonlinearity(u); };

    void validate() const;
};

/// Raised when an evolution produces a non-finite value; names the first
/// offending space index and the time index of the state it appeared in.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t index, std::size_t time_index, double time);
    std::size_t index() const { return index_; }
    std::size_t time_index() const { return time_index_; }

private:
    std::size_t index_;
    std::size_t time_index_;
};

/// One explicit step U^{k+1} = A_k U^k + i l_k f(U^k). The update is
/// applied in increment form U_n + sigma_n (q U_{n-1} - (1+q) U_n + U_{n+1}),
/// which is the same matrix product arranged so that rows with zero
/// stencil leave the value bit-for-bit unchanged. The matrix time index
/// must match the state.
FieldState step(const FieldState& state, const StepMatrix& matrix, double dt,
                const Nonlinearity& nonlinearity);

/// Runs the scheme from the given initial field (length N+1), assembling
/// a fresh matrix per time index. Time steps are l_k = (1-q) q^k. Throws
/// DivergenceError as soon as a non-finite value appears.
std::vector<FieldState> evolve(const EvolutionConfig& config, std::vector<cplx> initial);

/// Diagonal-dominance margins of an assembled (or hand-built) matrix:
/// |diag_0|^2 - |sigma_0|^2 at row 0 and |diag_n|^2 - (1+q)^2 |sigma_n|^2
/// elsewhere, with sigma read from the bands. Both margins equal 1
/// identically for assembled matrices, independent of the step ratio.
struct DominanceReport {
    bool passed = false;
    double worst_margin = 0.0;
    std::size_t worst_row = 0;
};

DominanceReport dominance_check(const StepMatrix& matrix);

/// Step-ratio diagnostic for a planned run. For each time index k it
/// reports the largest row index n satisfying k >= 2n+1 (-1 when none,
/// possibly beyond N when the whole grid qualifies) and the largest
/// |sigma_n^k| over the grid. The condition replaces the usual l = o(h^2)
/// step restriction; runs are not gated on it, only measured.
struct CflRow {
    std::size_t k = 0;
    long trusted_max_index = -1;   ///< largest n with k >= 2n+1, -1 if none
    double max_sigma_mag = 0.0;    ///< max over n <= N of |sigma_n^k|
};

struct CflReport {
    std::size_t order = 0;
    std::size_t steps = 0;
    std::vector<CflRow> per_step;          ///< k = 0..K
    std::size_t first_fully_trusted_k = 0; ///< 2N+1 (may exceed K)
    bool full_grid_ever_trusted = false;   ///< 2N+1 <= K
    double worst_sigma_mag = 0.0;          ///< attained at n = N, k = 0
};

CflReport cfl_diagnostic(QParam q, std::size_t order, std::size_t steps);

}  // namespace qnls
