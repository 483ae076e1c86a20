#include "qnls/scheme.hpp"

#include <cmath>
#include <string>

namespace qnls {

SchemeCoeffs coeff(QParam q, std::size_t n, std::size_t k) {
    const double qv = q.value();
    const double exponent = static_cast<double>(k) - 2.0 * static_cast<double>(n);
    const double delta = 2.0 * qv / ((1.0 + qv) * (1.0 - qv)) * std::pow(qv, exponent);
    const cplx sigma(0.0, delta);
    const cplx beta(1.0, -(1.0 + qv) * delta);
    return {delta, sigma, beta};
}

cplx StepMatrix::row_sum(std::size_t n) const {
    // off-diagonals first: the diagonal is built as 1 minus exactly this
    // partial sum, so interior rows cancel to 1 with no rounding residue
    cplx sum(0.0);
    if (n > 0) sum += lower[n];
    if (n + 1 < size()) sum += upper[n];
    return sum + diag[n];
}

std::vector<cplx> StepMatrix::apply(std::span<const cplx> v) const {
    if (v.size() != size()) {
        throw std::invalid_argument("StepMatrix::apply: vector length does not match matrix");
    }
    std::vector<cplx> out(size());
    for (std::size_t n = 0; n < size(); ++n) {
        cplx y = diag[n] * v[n];
        if (n > 0) y += lower[n] * v[n - 1];
        if (n + 1 < size()) y += upper[n] * v[n + 1];
        out[n] = y;
    }
    return out;
}

StepMatrix assemble_matrix(QParam q, std::size_t order, std::size_t k) {
    if (order < 2) {
        throw std::invalid_argument("assemble_matrix: order must be at least 2");
    }
    const double qv = q.value();
    StepMatrix m;
    m.q = qv;
    m.time_index = k;
    m.lower.assign(order + 1, cplx(0.0));
    m.diag.assign(order + 1, cplx(0.0));
    m.upper.assign(order + 1, cplx(0.0));
    m.sigma.assign(order + 1, cplx(0.0));

    for (std::size_t n = 0; n <= order; ++n) {
        const SchemeCoeffs c = coeff(q, n, k);
        m.sigma[n] = c.sigma;
        if (n == 0) {
            m.diag[0] = cplx(1.0, -c.delta);
            m.upper[0] = c.sigma;
        } else {
            m.lower[n] = qv * c.sigma;
            // beta = 1 - (1+q) sigma, formed as 1 - (q sigma + sigma) with
            // the same additions the row sum performs; large step ratios
            // then cancel bit for bit instead of to within eps * delta
            m.diag[n] = cplx(1.0, -(m.lower[n].imag() + c.sigma.imag()));
            if (n < order) m.upper[n] = c.sigma;
        }
    }
    return m;
}

void EvolutionConfig::validate() const {
    if (order < 2) {
        throw std::invalid_argument("EvolutionConfig: order must be at least 2");
    }
    if (start_index > steps) {
        throw std::invalid_argument("EvolutionConfig: start_index must not exceed steps");
    }
}

DivergenceError::DivergenceError(std::size_t index, std::size_t time_index, double time)
    : std::runtime_error("evolution diverged: non-finite value at n=" + std::to_string(index)
                         + ", k=" + std::to_string(time_index) + " (t=" + std::to_string(time) + ")"),
      index_(index),
      time_index_(time_index) {}

namespace {

bool finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

FieldState step(const FieldState& state, const StepMatrix& matrix, double dt,
                const Nonlinearity& nonlinearity) {
    const std::size_t count = matrix.size();
    if (state.values.size() != count) {
        throw std::invalid_argument("step: state length does not match matrix");
    }
    if (matrix.time_index != state.time_index) {
        throw std::invalid_argument("step: matrix time index does not match state");
    }
    if (matrix.sigma.size() != count) {
        throw std::invalid_argument("step: matrix carries no generator coefficients");
    }
    const double qv = matrix.q;
    const std::size_t order = matrix.order();
    const std::span<const cplx> u(state.values);

    FieldState next;
    next.values.resize(count);
    next.time_index = state.time_index + 1;
    next.time = state.time + dt;

    for (std::size_t n = 0; n < count; ++n) {
        cplx stencil;
        if (n == 0) {
            // first row folds the outer ghost value U_{-1} = U_0
            stencil = u[1] - u[0];
        } else if (n < order) {
            stencil = qv * u[n - 1] - (1.0 + qv) * u[n] + u[n + 1];
        } else {
            // truncated row: the U_{N+1} term is dropped
            stencil = qv * u[n - 1] - (1.0 + qv) * u[n];
        }
        cplx value = u[n] + matrix.sigma[n] * stencil;
        if (nonlinearity) {
            value += cplx(0.0, dt) * nonlinearity(u[n]);
        }
        next.values[n] = value;
    }
    return next;
}

std::vector<FieldState> evolve(const EvolutionConfig& config, std::vector<cplx> initial) {
    config.validate();
    if (initial.size() != config.order + 1) {
        throw std::invalid_argument("evolve: initial field length must be order + 1");
    }
    const double qv = config.q.value();

    std::vector<FieldState> trajectory;
    trajectory.reserve(config.steps - config.start_index + 1);

    FieldState state;
    state.values = std::move(initial);
    state.time_index = config.start_index;
    state.time = config.t0 + (1.0 - std::pow(qv, static_cast<double>(config.start_index)));
    trajectory.push_back(state);

    for (std::size_t k = config.start_index; k < config.steps; ++k) {
        const StepMatrix matrix = assemble_matrix(config.q, config.order, k);
        const double dt = (1.0 - qv) * std::pow(qv, static_cast<double>(k));
        FieldState next = step(trajectory.back(), matrix, dt, config.nonlinearity);
        for (std::size_t n = 0; n < next.values.size(); ++n) {
            if (!finite(next.values[n])) {
                throw DivergenceError(n, next.time_index, next.time);
            }
        }
        trajectory.push_back(std::move(next));
    }
    return trajectory;
}

DominanceReport dominance_check(const StepMatrix& matrix) {
    const std::size_t order = matrix.order();
    const double qv = matrix.q;
    const bool has_sigma = matrix.sigma.size() == matrix.size();
    DominanceReport report;
    report.passed = true;

    for (std::size_t n = 0; n <= order; ++n) {
        // off-diagonal weight (1+q)|sigma_n|, assembled the same way as the
        // diagonal's imaginary part: |q sigma| + |sigma|. The truncated row
        // is judged with the dropped column included, which is what makes
        // its margin the same algebraic 1 as every other row.
        double weight;
        if (n == 0) {
            weight = std::abs(matrix.upper[0]);
        } else {
            double sig_mag;
            if (n < order) {
                sig_mag = std::abs(matrix.upper[n]);
            } else if (has_sigma) {
                sig_mag = std::abs(matrix.sigma[n]);
            } else {
                sig_mag = std::abs(matrix.lower[n]) / qv;
            }
            weight = std::abs(matrix.lower[n]) + sig_mag;
        }
        // |diag|^2 - weight^2 in factored form: exact when the two
        // magnitudes coincide, and immune to overflow of the squares
        const double diag_im = std::abs(matrix.diag[n].imag());
        const double diag_re = matrix.diag[n].real();
        const double margin = diag_re * diag_re + (diag_im - weight) * (diag_im + weight);
        if (n == 0 || margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_row = n;
        }
        if (!(margin > 0.0)) report.passed = false;
    }
    return report;
}

CflReport cfl_diagnostic(QParam q, std::size_t order, std::size_t steps) {
    CflReport report;
    report.order = order;
    report.steps = steps;
    report.first_fully_trusted_k = 2 * order + 1;
    report.full_grid_ever_trusted = report.first_fully_trusted_k <= steps;
    report.per_step.reserve(steps + 1);

    for (std::size_t k = 0; k <= steps; ++k) {
        CflRow row;
        row.k = k;
        row.trusted_max_index = k >= 1 ? static_cast<long>((k - 1) / 2) : -1;
        // |sigma_n^k| grows toward the deep end of the grid, so the max
        // over n <= N sits at n = N.
        row.max_sigma_mag = coeff(q, order, k).delta;
        report.per_step.push_back(row);
    }
    report.worst_sigma_mag = report.per_step.front().max_sigma_mag;
    return report;
}

}  // namespace qnls
