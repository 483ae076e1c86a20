#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qnls/qgrid.hpp"

namespace qnls {

/// Parameters of the traveling sech-envelope solution
///
///   u(x,t) = sqrt(2a/qs) exp(i (c x / 2 - theta t + varphi)) sech(sqrt(a) (x - c t) + phi)
///
/// with theta = c^2/4 - a. `a` sets the amplitude and envelope width,
/// `qs` rescales the amplitude, `c` is the drift speed, `varphi` the
/// carrier phase and `phi` the envelope shift. The formula solves the
/// cubic equation i u_t + u_xx + |u|^2 u = 0 exactly only when qs = 1;
/// other qs values rescale the amplitude away from the exact balance.
class SolitonParams {
public:
    SolitonParams(double a, double qs, double c, double varphi, double phi)
        : a_(a), qs_(qs), c_(c), varphi_(varphi), phi_(phi) {
        if (!(a > 0.0)) throw std::invalid_argument("SolitonParams: a must be positive");
        if (!(qs > 0.0)) throw std::invalid_argument("SolitonParams: qs must be positive");
    }

    double a() const { return a_; }
    double qs() const { return qs_; }
    double c() const { return c_; }
    double varphi() const { return varphi_; }
    double phi() const { return phi_; }

    /// Dispersion offset theta = c^2/4 - a, always derived so the relation
    /// holds exactly.
    double theta() const { return c_ * c_ / 4.0 - a_; }

private:
    double a_, qs_, c_, varphi_, phi_;
};

/// Default parameter set of the single-soliton benchmark experiment.
SolitonParams benchmark_single_soliton();

/// Default pair for the counter-propagating two-soliton experiment
/// (same speed, opposite directions).
std::pair<SolitonParams, SolitonParams> benchmark_soliton_pair();

/// Initial data for an evolution: one soliton, a superposed pair, or a
/// verbatim field vector.
struct InitialData {
    std::variant<SolitonParams, std::pair<SolitonParams, SolitonParams>, std::vector<cplx>> source;

    static InitialData single(SolitonParams p) { return {std::move(p)}; }
    static InitialData pair(SolitonParams p1, SolitonParams p2) {
        return {std::make_pair(std::move(p1), std::move(p2))};
    }
    static InitialData custom(std::vector<cplx> values) { return {std::move(values)}; }
};

/// Overflow-safe 1/cosh: evaluated through decaying exponentials, with
/// arguments beyond |z| > 350 flushed to exactly 0.
double sech_safe(double z);

/// Evaluates the traveling-wave solution at (x, t).
cplx soliton_eval(const SolitonParams& p, double x, double t);

/// Samples the initial data on the grid at time t0. Custom vectors are
/// returned verbatim and must match the grid length; a soliton pair is
/// sampled as the pointwise sum of the two evaluations.
std::vector<cplx> initial_field(const InitialData& data, const QGrid& grid, double t0);

/// Closed-form reference field (x,t) -> value for error measurements.
/// The pair reference is the superposition of the two solitons, which is
/// not an exact solution of the nonlinear equation; it is nevertheless
/// the reference the benchmark tables compare against. Custom data has
/// no closed form and is rejected.
std::function<cplx(double, double)> reference_field(const InitialData& data);

/// Cubic nonlinearity f(u) = |u|^2 u.
inline cplx cubic_nonlinearity(cplx u) { return std::norm(u) * u; }

/// Uniform nx-by-nt sample lattice over [0,1] x [0,1].
std::vector<std::array<double, 2>> residual_lattice(std::size_t nx, std::size_t nt);

/// Max of |i u_t + u_xx + |u|^2 u| over the sample points, with u_t and
/// u_xx taken by 4th-order central differences of width h_fd. Small
/// values certify that `field` solves the cubic equation; the soliton
/// overload is the independent check of the closed formula (meaningfully
/// small only for qs = 1).
double continuous_residual(const std::function<cplx(double, double)>& field,
                           std::span<const std::array<double, 2>> samples, double h_fd);
double continuous_residual(const SolitonParams& p,
                           std::span<const std::array<double, 2>> samples, double h_fd);

}  // namespace qnls
