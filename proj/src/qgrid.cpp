#include "qnls/qgrid.hpp"

namespace qnls {

QGrid build_grid(QParam q, std::size_t order) {
    if (order < 1) {
        throw std::invalid_argument("build_grid: order must be at least 1");
    }
    const double qv = q.value();
    QGrid grid{q, order, {}, {}};
    grid.points.resize(order + 1);
    grid.steps.resize(order + 1);

    double x = 1.0;
    for (std::size_t n = 0; n <= order; ++n) {
        grid.points[n] = x;
        const double next = qv * x;
        grid.steps[n] = x - next;  // == q^n (1-q), and exactly x_n - x_{n+1}
        x = next;
    }
    return grid;
}

long locate(QParam q, double x) {
    if (x == 0.0) {
        throw std::invalid_argument("locate: no cell contains 0");
    }
    const double qv = q.value();
    const double ax = std::abs(x);

    long n = static_cast<long>(std::floor(std::log(ax) / std::log(qv)));
    // log/floor can land one cell off at the boundaries; nudge until
    // q^{n+1} < |x| <= q^n holds.
    while (std::pow(qv, static_cast<double>(n)) < ax) --n;
    while (std::pow(qv, static_cast<double>(n + 1)) >= ax) ++n;
    return n;
}

cplx scaled_discrete_laplacian(const QGrid& grid, std::span<const cplx> field, std::size_t n) {
    if (field.size() != grid.size()) {
        throw std::invalid_argument("scaled_discrete_laplacian: field length does not match grid");
    }
    if (n < 1 || n + 1 > grid.order) {
        throw std::invalid_argument("scaled_discrete_laplacian: index must be interior (1 <= n <= N-1)");
    }
    const double qv = grid.q.value();
    const double h = grid.steps[n];
    const cplx stencil = qv * field[n - 1] - (1.0 + qv) * field[n] + field[n + 1];
    return (2.0 * qv / (1.0 + qv)) * stencil / (h * h);
}

}  // namespace qnls
