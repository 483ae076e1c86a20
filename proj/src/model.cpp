#include "qnls/model.hpp"

#include <cmath>

namespace qnls {

SolitonParams benchmark_single_soliton() {
    return SolitonParams(0.01, 1.0, 0.1, 0.0, 0.0);
}

std::pair<SolitonParams, SolitonParams> benchmark_soliton_pair() {
    return {SolitonParams(1.0, 2.0, 4.0, 0.0, 15.0),
            SolitonParams(2.25, 2.0, -4.0, 0.0, -7.5)};
}

double sech_safe(double z) {
    const double az = std::abs(z);
    if (az > 350.0) return 0.0;
    const double e = std::exp(-az);
    return 2.0 * e / (1.0 + e * e);
}

cplx soliton_eval(const SolitonParams& p, double x, double t) {
    const double envelope = sech_safe(std::sqrt(p.a()) * (x - p.c() * t) + p.phi());
    const double phase = 0.5 * p.c() * x - p.theta() * t + p.varphi();
    return std::sqrt(2.0 * p.a() / p.qs()) * std::polar(envelope, phase);
}

std::vector<cplx> initial_field(const InitialData& data, const QGrid& grid, double t0) {
    std::vector<cplx> field(grid.size());
    if (const auto* custom = std::get_if<std::vector<cplx>>(&data.source)) {
        if (custom->size() != grid.size()) {
            throw std::invalid_argument("initial_field: custom vector length does not match grid");
        }
        return *custom;
    }
    const auto reference = reference_field(data);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        field[n] = reference(grid.points[n], t0);
    }
    return field;
}

std::function<cplx(double, double)> reference_field(const InitialData& data) {
    if (const auto* p = std::get_if<SolitonParams>(&data.source)) {
        return [p = *p](double x, double t) { return soliton_eval(p, x, t); };
    }
    if (const auto* pq = std::get_if<std::pair<SolitonParams, SolitonParams>>(&data.source)) {
        return [p1 = pq->first, p2 = pq->second](double x, double t) {
            return soliton_eval(p1, x, t) + soliton_eval(p2, x, t);
        };
    }
    throw std::invalid_argument("reference_field: custom initial data has no closed form");
}

std::vector<std::array<double, 2>> residual_lattice(std::size_t nx, std::size_t nt) {
    std::vector<std::array<double, 2>> samples;
    samples.reserve(nx * nt);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = nx > 1 ? static_cast<double>(i) / static_cast<double>(nx - 1) : 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            const double t = nt > 1 ? static_cast<double>(j) / static_cast<double>(nt - 1) : 0.0;
            samples.push_back({x, t});
        }
    }
    return samples;
}

double continuous_residual(const std::function<cplx(double, double)>& field,
                           std::span<const std::array<double, 2>> samples, double h_fd) {
    if (!(h_fd > 0.0)) {
        throw std::invalid_argument("continuous_residual: h_fd must be positive");
    }
    const double h = h_fd;
    double worst = 0.0;
    for (const auto& [x, t] : samples) {
        // 4th-order central differences
        const cplx ut = (-field(x, t + 2 * h) + 8.0 * field(x, t + h)
                         - 8.0 * field(x, t - h) + field(x, t - 2 * h)) / (12.0 * h);
        const cplx uxx = (-field(x + 2 * h, t) + 16.0 * field(x + h, t) - 30.0 * field(x, t)
                          + 16.0 * field(x - h, t) - field(x - 2 * h, t)) / (12.0 * h * h);
        const cplx u = field(x, t);
        worst = std::max(worst, std::abs(cplx(0.0, 1.0) * ut + uxx + cubic_nonlinearity(u)));
    }
    return worst;
}

double continuous_residual(const SolitonParams& p,
                           std::span<const std::array<double, 2>> samples, double h_fd) {
    return continuous_residual(
        [&p](double x, double t) { return soliton_eval(p, x, t); }, samples, h_fd);
}

}  // namespace qnls
