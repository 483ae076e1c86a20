#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnls {

using cplx = std::complex<double>;

/// Deformation parameter of the geometric calculus, constrained to 0 < q < 1.
class QParam {
public:
    explicit QParam(double q) : q_(q) {
        if (!(q > 0.0) || !(q < 1.0)) {
            throw std::invalid_argument(
                "QParam: q must lie strictly inside (0,1), got " + std::to_string(q));
        }
    }

    double value() const { return q_; }

private:
    double q_;
};

/// Geometric space grid x_n = q^n for n = 0..N with local steps
/// h_n = q^n (1-q) = x_n - x_{n+1}.
///
/// Note the index direction: n increases as the position decreases,
/// x_0 = 1 down toward (but never reaching) 0. Every vector in this
/// library uses that ordering.
struct QGrid {
    QParam q;
    std::size_t order;            ///< N, the highest index
    std::vector<double> points;   ///< x_n, size N+1, strictly decreasing
    std::vector<double> steps;    ///< h_n = x_n - x_{n+1}, size N+1

    std::size_t size() const { return points.size(); }
};

/// Builds the grid of order N >= 1. steps[n] is the exact difference
/// points[n] - points[n+1] (with x_{N+1} = q^{N+1} extending past the end).
QGrid build_grid(QParam q, std::size_t order);

/// Cell index of a nonzero position: the unique n with q^{n+1} < |x| <= q^n.
/// Negative indices cover |x| > 1. x = 0 belongs to no cell and is rejected.
long locate(QParam q, double x);

/// Jackson difference quotient (f(x) - f(qx)) / ((1-q) x).
///
/// x = 0 is rejected: the grid never contains it, so the f'(0) branch of
/// the usual definition is deliberately unsupported here.
template <class F>
double q_derivative(F&& f, double x, QParam q) {
    if (x == 0.0) {
        throw std::invalid_argument("q_derivative: x = 0 is not supported");
    }
    const double qv = q.value();
    return (f(x) - f(qv * x)) / ((1.0 - qv) * x);
}

/// Second-order geometric difference (q f(x/q) - (1+q) f(x) + f(qx)) / x^2.
/// Annihilates constants and linear functions; x = 0 is rejected.
template <class F>
double q_laplacian(F&& f, double x, QParam q) {
    if (x == 0.0) {
        throw std::invalid_argument("q_laplacian: x = 0 is not supported");
    }
    const double qv = q.value();
    return (qv * f(x / qv) - (1.0 + qv) * f(x) + f(qv * x)) / (x * x);
}

/// Spatial operator of the discrete scheme at an interior index n:
///
///   (2q/(1+q)) * (q U_{n-1} - (1+q) U_n + U_{n+1}) / h_n^2
///
/// The 2q/(1+q) factor normalizes the stencil so that samples of x^2 map
/// to exactly 2 for every q and every interior n. Boundary rows live in
/// the time-stepping matrix, so n = 0 and n = N are rejected here.
cplx scaled_discrete_laplacian(const QGrid& grid, std::span<const cplx> field, std::size_t n);

}  // namespace qnls
