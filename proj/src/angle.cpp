#include "gsqg/angle.hpp"

#include "gsqg/errors.hpp"
#include "gsqg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace gsqg {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

void require_beta_open(double beta, const char* who) {
    if (!(beta > 1.0 && beta < 2.0)) throw DomainError(std::string(who) + ": beta must lie in (1, 2)");
}

// Dormand-Prince 5(4).
struct DP45 {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                            e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
};

struct StepOut {
    double w = 0.0;
    double err = 0.0;
    bool finite = false;
};

StepOut dp_step(const std::function<double(double)>& f, double w, double k1, double h) {
    using D = DP45;
    const double k2 = f(w + h * D::a21 * k1);
    const double k3 = f(w + h * (D::a31 * k1 + D::a32 * k2));
    const double k4 = f(w + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3));
    const double k5 = f(w + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4));
    const double k6 = f(w + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5));
    StepOut o;
    o.w = w + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
    const double k7 = f(o.w);
    o.err = h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);
    o.finite = std::isfinite(o.w) && std::isfinite(o.err) && std::isfinite(k7);
    return o;
}

AngleState make_state(double t, double w) { return {t, std::exp(-std::exp(w)), w}; }

// ln(gamma^(1-beta)) = (beta-1) e^w, with beta = 1 exact even when e^w overflows.
double log_inv_power(double beta, double w) { return beta == 1.0 ? 0.0 : (beta - 1.0) * std::exp(w); }

}  // namespace

double lower_envelope_rhs(double gamma, double C_tilde, double C3, double beta) {
    if (!(gamma > 0.0)) throw DomainError("lower_envelope_rhs: gamma must be > 0");
    return -(C_tilde * std::pow(gamma, 2.0 - beta) - C3 * gamma);
}

double upper_envelope_rhs(double gamma, double C2_tilde, double beta) {
    if (!(gamma > 0.0 && gamma < 0.5)) throw DomainError("upper_envelope_rhs: gamma must lie in (0, 1/2)");
    return -C2_tilde * std::pow(gamma, 2.0 - beta) * std::fabs(std::log(gamma));
}

// With gamma = exp(-e^w): gamma^(1-beta) = exp((beta-1) e^w).
AngleRhs power_law_rhs(double beta, double c) {
    if (!(beta >= 1.0 && beta < 2.0)) throw DomainError("power_law_rhs: beta must lie in [1, 2)");
    if (!(c > 0.0)) throw PreconditionError("power_law_rhs: c must be > 0");
    return {[beta, c](double w) { return c * std::exp(log_inv_power(beta, w) - w); }};
}

AngleRhs lower_envelope(double C_tilde, double C3, double beta) {
    if (!(beta >= 1.0 && beta < 2.0)) throw DomainError("lower_envelope: beta must lie in [1, 2)");
    if (!(C_tilde > 0.0) || !(C3 >= 0.0)) throw PreconditionError("lower_envelope: need C_tilde > 0, C3 >= 0");
    return {[=](double w) { return C_tilde * std::exp(log_inv_power(beta, w) - w) - C3 * std::exp(-w); }};
}

AngleRhs upper_envelope(double C2_tilde, double beta) {
    if (!(beta >= 1.0 && beta < 2.0)) throw DomainError("upper_envelope: beta must lie in [1, 2)");
    if (!(C2_tilde > 0.0)) throw PreconditionError("upper_envelope: C2_tilde must be > 0");
    AngleRhs r{[=](double w) { return C2_tilde * std::exp(log_inv_power(beta, w)); }};
    r.min_w = std::log(std::numbers::ln2);
    return r;
}

AngleRhs from_signed_rate(std::function<double(double)> f) {
    return {[f = std::move(f)](double w) {
        const double lg = -std::exp(w);
        const double g = std::exp(lg);
        if (!(g > 0.0) || !std::isnormal(g)) return std::numeric_limits<double>::quiet_NaN();
        return f(g) / (g * lg);
    }};
}

double default_c_tilde(double beta, double C_beta) {
    require_beta_open(beta, "default_c_tilde");
    return C_beta * std::numbers::pi * a_beta(beta) * (beta - 1.0) / (2.0 - beta);
}

void StepControl::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw PreconditionError("StepControl: tolerances must be > 0");
    if (!(h_init >= 0.0) || !(h_max >= 0.0)) throw PreconditionError("StepControl: step sizes must be >= 0");
    if (max_steps <= 0) throw PreconditionError("StepControl: max_steps must be > 0");
}

double AngleTrajectory::final_log_gamma() const { return samples.empty() ? 0.0 : -std::exp(samples.back().w); }

AngleTrajectory integrate_angle(const AngleRhs& rhs, double gamma0, double t_max, const StepControl& step,
                                double gamma_floor) {
    step.validate();
    if (!(gamma0 > 0.0 && gamma0 < 1.0)) throw PreconditionError("integrate_angle: gamma0 must lie in (0, 1)");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw PreconditionError("integrate_angle: t_max must be > 0");
    if (!(gamma_floor > 0.0 && gamma_floor < 1.0))
        throw PreconditionError("integrate_angle: gamma_floor must lie in (0, 1)");
    if (!rhs.w_rate) throw PreconditionError("integrate_angle: empty rate function");

    const auto& f = rhs.w_rate;
    double t = 0.0;
    double w = std::log(-std::log(gamma0));
    if (!(w > rhs.min_w)) throw PreconditionError("integrate_angle: gamma0 outside the domain of the rate");
    double k1 = f(w);
    if (!std::isfinite(k1)) throw DomainError("integrate_angle: rate not finite at gamma0");
    if (k1 < 0.0) throw PreconditionError("integrate_angle: rate makes gamma grow at gamma0 (above the balance point)");

    AngleTrajectory out;
    out.gamma_floor = gamma_floor;
    out.samples.push_back(make_state(t, w));
    const double w_floor = std::log(-std::log(gamma_floor));
    if (w >= w_floor) out.floor_time = 0.0;

    const double h_max = step.h_max > 0.0 ? step.h_max : t_max / 4.0;
    double h = step.h_init;
    if (h == 0.0) h = k1 > 0.0 ? std::min(h_max, 1e-3 * (1.0 + std::fabs(w)) / k1) : h_max;
    h = std::min(h, h_max);
    double h_first_try = -1.0;  // first attempted size at the current t

    // Tolerances target the accumulated error; the local test keeps a factor 10 in hand.
    auto tol = [&](double a, double b) {
        return 0.1 * (step.abs_tol + step.rel_tol * std::max(std::fabs(a), std::fabs(b)));
    };

    auto collapsed = [&](double hh) { return hh < 4.0 * eps * std::max(t, std::numeric_limits<double>::min()); };
    auto vanish = [&](double width) {
        out.underflow = true;
        out.vanish_lo = t;
        out.vanish_hi = t + width;
        out.vanish_time = 0.5 * (out.vanish_lo + out.vanish_hi);
        if (!out.floor_time) out.floor_time = out.vanish_time;
        return out;
    };
    double h_prev = h;

    while (t < t_max) {
        if (out.steps + out.rejected >= step.max_steps)
            throw AccuracyError("integrate_angle: max_steps exhausted at t = " + std::to_string(t), t, h);
        if (collapsed(h) && t + h < t_max) return vanish(h_prev);
        const bool last = t + h >= t_max;
        const double hs = last ? t_max - t : h;
        if (h_first_try < 0.0) h_first_try = hs;
        const StepOut s = dp_step(f, w, k1, hs);
        const double ratio = s.finite ? std::fabs(s.err) / tol(w, s.w) : std::numeric_limits<double>::infinity();
        if (!(ratio <= 1.0)) {
            ++out.rejected;
            h = hs * (s.finite ? std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.5) : 0.25);
            if (collapsed(h)) return vanish(h_first_try);
            continue;
        }
        const double k_new = f(s.w);
        if (k_new < 0.0) throw PreconditionError("integrate_angle: rate makes gamma grow (above the balance point)");
        if (!out.floor_time && s.w >= w_floor) {
            double lo = 0.0, hi = hs;
            for (int i = 0; i < 200 && hi - lo > 4.0 * eps * (t + hi); ++i) {
                const double mid = 0.5 * (lo + hi);
                (dp_step(f, w, k1, mid).w >= w_floor ? hi : lo) = mid;
            }
            out.floor_time = t + 0.5 * (lo + hi);
        }
        t = last ? t_max : t + hs;
        w = s.w;
        k1 = k_new;
        ++out.steps;
        h_first_try = -1.0;
        h_prev = hs;
        out.samples.push_back(make_state(t, w));
        const double grow = ratio > 0.0 ? std::min(5.0, 0.9 * std::pow(ratio, -0.2)) : 5.0;
        h = std::min(h_max, hs * grow);
    }
    return out;
}

QuadResult vanish_time_quadrature(const AngleRhs& rhs, double gamma0, const GKOptions& opts) {
    if (!(gamma0 > 0.0 && gamma0 < 1.0)) throw PreconditionError("vanish_time_quadrature: gamma0 must lie in (0, 1)");
    const double w0 = std::log(-std::log(gamma0));
    auto g = [&](double s) {
        if (s >= 1.0) return 0.0;
        const double u = 1.0 - s;
        const double rate = rhs.w_rate(w0 + s / u);
        if (std::isinf(rate)) return 0.0;
        return 1.0 / (rate * u * u);
    };
    return integrate_gk(g, 0.0, 1.0, opts);
}

double power_ode_exact_vanish_time(double beta, double gamma0, double c) {
    if (!(gamma0 > 0.0) || !(c > 0.0)) throw PreconditionError("power_ode_exact_vanish_time: need gamma0, c > 0");
    return std::pow(gamma0, beta - 1.0) / (c * (beta - 1.0));
}

BlowupTimeRoutes blowup_time_routes(double beta, double gamma0, double C, const GKOptions& opts) {
    require_beta_open(beta, "blowup_time_lower_bound");
    if (!(gamma0 > 0.0 && gamma0 < 0.5)) throw PreconditionError("blowup_time_lower_bound: gamma0 must lie in (0, 1/2)");
    if (!(C > 0.0)) throw PreconditionError("blowup_time_lower_bound: C must be > 0");
    const double U = std::pow(gamma0, beta - 1.0);
    // 1/(-ln u) has unbounded slope at u = 0; decade breakpoints keep every panel smooth.
    std::vector<double> pts{0.0};
    for (int k = 300; k >= 1; --k) pts.push_back(U * std::pow(10.0, -k));
    pts.push_back(U);
    const QuadResult a = integrate_gk([](double u) { return u > 0.0 ? -1.0 / std::log(u) : 0.0; }, pts, opts);
    const double v0 = (beta - 1.0) * -std::log(gamma0);
    auto e1 = [v0](double s) {
        if (s >= 1.0) return 0.0;
        const double u = 1.0 - s;
        const double v = v0 + s / u;
        return std::exp(-v) / (v * u * u);
    };
    const QuadResult b = integrate_gk(e1, 0.0, 1.0, opts);
    return {a.value / C, b.value / C, std::max(a.err_est, b.err_est) / C};
}

double blowup_time_lower_bound(double beta, double gamma0, double C, const GKOptions& opts) {
    return blowup_time_routes(beta, gamma0, C, opts).log_substitution;
}

double holder_distance_bound(double c1, double c2, double seminorm, double sigma) {
    if (!(seminorm > 0.0)) throw DomainError("holder_distance_bound: seminorm must be > 0");
    if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("holder_distance_bound: sigma must lie in (0, 1)");
    if (c1 == c2) throw PreconditionError("holder_distance_bound: levels must differ");
    return std::pow(std::fabs(c2 - c1) / seminorm, 1.0 / sigma);
}

SaddleAngle saddle_angle(double alpha, double delta) {
    const double den = 1.0 - alpha * delta;
    if (den == 0.0) throw DomainError("saddle_angle: alpha * delta = 1");
    return {std::atan((delta + alpha) / den), alpha + delta};
}

}  // namespace gsqg
