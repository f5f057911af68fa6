#include "gsqg/field.hpp"

#include "gsqg/errors.hpp"

#include <cmath>

namespace gsqg {

ScalarField::ScalarField(int n_, double box_length_)
    : n(n_), box_length(box_length_), values(static_cast<std::size_t>(n_) * n_, 0.0) {}

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::saddle: return "saddle";
        case InitialKind::elliptic: return "elliptic";
        case InitialKind::single_mode: return "single_mode";
    }
    return "?";
}

std::string to_string(Profile p) { return p == Profile::tanh ? "tanh" : "linear"; }

InitialKind parse_initial_kind(const std::string& s) {
    if (s == "saddle") return InitialKind::saddle;
    if (s == "elliptic") return InitialKind::elliptic;
    if (s == "single_mode") return InitialKind::single_mode;
    throw ConfigError("initial_data must be saddle, elliptic or single_mode, got '" + s + "'", "initial_data");
}

Profile parse_profile(const std::string& s) {
    if (s == "tanh") return Profile::tanh;
    if (s == "linear") return Profile::linear;
    throw ConfigError("profile must be tanh or linear, got '" + s + "'", "profile");
}

void SimConfig::validate() const {
    auto fail = [](const std::string& key, const std::string& msg) { throw ConfigError(key + ": " + msg, key); };
    if (!(beta > 1.0 && beta < 2.0)) fail("beta", "must lie in (1, 2)");
    if (n < 8 || (n & (n - 1)) != 0) fail("n", "must be a power of two >= 8");
    if (!(box_length > 0.0)) fail("box_length", "must be > 0");
    if (!(dt >= 0.0)) fail("dt", "must be >= 0");
    if (!(t_end >= 0.0)) fail("t_end", "must be >= 0");
    if (!(dealias > 0.0 && dealias <= 1.0)) fail("dealias", "must lie in (0, 1]");
    if (!(cfl_max > 0.0)) fail("cfl_max", "must be > 0");
    if (!(width > 0.0)) fail("width", "must be > 0");
    if (!(sigma > 0.0 && sigma < 1.0)) fail("sigma", "must lie in (0, 1)");
    if (diag_every < 1) fail("diag_every", "must be >= 1");
    if (!(contour_eps > 0.0 && contour_eps < 1.0)) fail("contour_eps", "must lie in (0, 1)");
    if (!(fit_radius >= 0.0)) fail("fit_radius", "must be >= 0");
    if (level_values.first == level_values.second) fail("level_values", "levels must differ");
    if (initial_data != InitialKind::single_mode) {
        if (!(cutoff_radius > 0.0)) fail("cutoff_radius", "must be > 0");
        if (!(cutoff_radius < 0.5 * box_length)) fail("cutoff_radius", "must be below half the box length");
        if (offset == 0.0 && initial_data == InitialKind::saddle) fail("offset", "g(0) must be nonzero");
    }
    if (initial_data == InitialKind::saddle && alpha0 * delta0 == 1.0) fail("alpha0", "alpha0 * delta0 = 1");
    if (initial_data == InitialKind::elliptic && !(a0 > 0.0 && b0 > 0.0)) fail("a0", "a0 and b0 must be > 0");
    if (initial_data == InitialKind::single_mode && mode_k1 == 0 && mode_k2 == 0)
        fail("mode_k1", "the zero mode is not a valid single mode");
}

double smooth_cutoff(double r, double R) {
    if (r <= 0.5 * R) return 1.0;
    if (r >= R) return 0.0;
    auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    const double s = (R - r) / (0.5 * R);
    return f(s) / (f(s) + f(1.0 - s));
}

double profile_value(const SimConfig& cfg, double s) {
    const double x = s / cfg.width;
    return cfg.offset + cfg.amplitude * (cfg.profile == Profile::tanh ? std::tanh(x) : x);
}

ScalarField make_initial_field(const SimConfig& cfg) {
    cfg.validate();
    ScalarField f(cfg.n, cfg.box_length);
    const double two_pi_over_L = 2.0 * std::numbers::pi / cfg.box_length;
    for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.n; ++j) {
            const double y1 = f.coord(i), y2 = f.coord(j);
            double v = 0.0;
            switch (cfg.initial_data) {
                case InitialKind::saddle: {
                    const double rho = (cfg.alpha0 * y1 + y2) * (cfg.delta0 * y1 - y2);
                    v = profile_value(cfg, rho) * smooth_cutoff(std::hypot(y1, y2), cfg.cutoff_radius);
                    break;
                }
                case InitialKind::elliptic: {
                    const double q = cfg.a0 * y1 * y1 + cfg.b0 * y2 * y2;
                    v = profile_value(cfg, q) * smooth_cutoff(std::hypot(y1, y2), cfg.cutoff_radius);
                    break;
                }
                case InitialKind::single_mode:
                    v = std::cos(two_pi_over_L * (cfg.mode_k1 * y1 + cfg.mode_k2 * y2));
                    break;
            }
            f.at(i, j) = v;
        }
    return f;
}

}  // namespace gsqg
