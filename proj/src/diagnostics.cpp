#include "gsqg/diagnostics.hpp"

#include "gsqg/contour.hpp"
#include "gsqg/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gsqg {

double holder_seminorm_grid(const ScalarField& f, double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw PreconditionError("holder_seminorm_grid: sigma must lie in (0, 1]");
    const int n = f.n;
    const double h = f.spacing();
    constexpr std::array<std::array<int, 2>, 8> dirs{{{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}}};
    double best = 0.0;
    for (const auto& d : dirs)
        for (int s = 1; std::max(std::abs(d[0]), std::abs(d[1])) * s <= n / 2; s *= 2) {
            const int o1 = d[0] * s, o2 = d[1] * s;
            const double inv = std::pow(h * std::hypot(o1, o2), -sigma);
            double m = 0.0;
            for (int i = 0; i < n; ++i) {
                const int i2 = (i + o1 + n) % n;
                for (int j = 0; j < n; ++j) m = std::max(m, std::fabs(f.at(i, j) - f.at(i2, (j + o2 + n) % n)));
            }
            best = std::max(best, m * inv);
        }
    return best;
}

double sup_gradient(const ScalarField& f, Spectral& sp) {
    const Spectrum s = sp.forward(f.values);
    const std::vector<double> g1 = sp.inverse(sp.d1(s)), g2 = sp.inverse(sp.d2(s));
    double m = 0.0;
    for (std::size_t k = 0; k < g1.size(); ++k) m = std::max(m, std::hypot(g1[k], g2[k]));
    return m;
}

DiagRecord diagnostics(const ScalarField& f, const SimConfig& cfg, Spectral& sp, const std::optional<DiagRecord>& prev) {
    DiagRecord r;
    r.time = f.time;
    double sq = 0.0;
    for (double v : f.values) {
        if (!std::isfinite(v)) throw PreconditionError("diagnostics: non-finite field value");
        r.sup_theta = std::max(r.sup_theta, std::fabs(v));
        sq += v * v;
    }
    const double h = f.spacing();
    r.l2_theta = std::sqrt(sq) * h;
    r.sup_grad = sup_gradient(f, sp);
    r.holder_seminorm = holder_seminorm_grid(f, cfg.sigma);
    r.theta_at_origin = f.at(f.n / 2, f.n / 2);
    r.sup_velocity = max_speed(velocity(f, cfg.beta, sp));

    if (r.theta_at_origin != 0.0)
        r.opening_angle = contour_opening_angle(f, r.theta_at_origin * (1.0 - cfg.contour_eps), cfg.effective_fit_radius());
    r.level_distance =
        polyline_distance(marching_squares(f, cfg.level_values.first), marching_squares(f, cfg.level_values.second));

    if (prev) {
        r.step = prev->step;
        r.holder_time_integral =
            prev->holder_time_integral + 0.5 * (r.time - prev->time) * (prev->holder_norm() + r.holder_norm());
    }
    return r;
}

}  // namespace gsqg
