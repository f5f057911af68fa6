#pragma once

#include "gsqg/quadrature.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace gsqg {

// Signed rate -(C_tilde gamma^(2-beta) - C3 gamma).
double lower_envelope_rhs(double gamma, double C_tilde, double C3, double beta);
// Signed rate -C2_tilde gamma^(2-beta) |ln gamma|, 0 < gamma < 1/2.
double upper_envelope_rhs(double gamma, double C2_tilde, double beta);

// The rate in the variable w = ln(-ln gamma): dw/dt = (d gamma/dt) / (gamma ln gamma).
// gamma -> 0 is w -> +inf, so the trajectory stays representable after gamma
// itself underflows. A negative dw/dt means gamma grows and is rejected.
struct AngleRhs {
    std::function<double(double)> w_rate;
    double min_w = -std::numeric_limits<double>::infinity();  // upper envelope: gamma < 1/2
};

AngleRhs power_law_rhs(double beta, double c);                       // -c gamma^(2-beta)
AngleRhs lower_envelope(double C_tilde, double C3, double beta);
AngleRhs upper_envelope(double C2_tilde, double beta);               // beta = 1 allowed
// Wraps a plain signed rate f(gamma); exact only while gamma is a normal double.
AngleRhs from_signed_rate(std::function<double(double)> f);

// Default C_tilde: the stream lower-bound coefficient C_beta pi A(beta)(beta-1)/(2-beta)
// with M(p) = 1. A modeling placeholder; the true constant is not quantified.
double default_c_tilde(double beta, double C_beta);

struct AngleState {
    double t = 0.0;
    double gamma = 0.0;  // may underflow to 0 while w is still finite
    double w = 0.0;      // ln(-ln gamma)
};

struct StepControl {
    double rel_tol = 1e-10;  // targets for the accumulated error in w
    double abs_tol = 1e-12;
    double h_init = 0.0;  // 0: chosen from the initial rate
    double h_max = 0.0;   // 0: t_max / 4
    long max_steps = 5'000'000;
    void validate() const;
};

struct AngleTrajectory {
    std::vector<AngleState> samples;
    double gamma_floor = 1e-12;
    // First t with gamma <= gamma_floor, bisection-bracketed.
    std::optional<double> floor_time;
    // Time at which gamma reaches 0: the step size collapses there, so it is
    // reported as the midpoint of [vanish_lo, vanish_hi] with underflow set.
    std::optional<double> vanish_time;
    double vanish_lo = 0.0;
    double vanish_hi = 0.0;
    bool underflow = false;
    long steps = 0;
    long rejected = 0;
    double final_log_gamma() const;  // ln gamma at the last sample
};

// Adaptive Dormand-Prince 5(4) in w. Throws PreconditionError on gamma0 outside
// (0, 1) or a growing gamma, AccuracyError when max_steps is exhausted.
AngleTrajectory integrate_angle(const AngleRhs& rhs, double gamma0, double t_max, const StepControl& step = {},
                                double gamma_floor = 1e-12);

// Independent check: t = int_(w0)^inf dw / w_rate(w).
QuadResult vanish_time_quadrature(const AngleRhs& rhs, double gamma0, const GKOptions& opts = {});

// gamma0^(beta-1) / (c (beta-1)) for d gamma/dt = -c gamma^(2-beta).
double power_ode_exact_vanish_time(double beta, double gamma0, double c);

// (1/C) int_0^gamma0 d gamma / (gamma^(2-beta) |ln gamma|).
struct BlowupTimeRoutes {
    double log_substitution = 0.0;      // u = gamma^(beta-1): int_0^(gamma0^(beta-1)) du / (-ln u)
    double exponential_integral = 0.0;  // v = -ln u: int_(v0)^inf e^-v / v dv
    double err_est = 0.0;
};
BlowupTimeRoutes blowup_time_routes(double beta, double gamma0, double C, const GKOptions& opts = {});
double blowup_time_lower_bound(double beta, double gamma0, double C, const GKOptions& opts = {});

// (|c2 - c1| / seminorm)^(1/sigma).
double holder_distance_bound(double c1, double c2, double seminorm, double sigma);

struct SaddleAngle {
    double gamma_exact = 0.0;   // arctan((delta + alpha) / (1 - alpha delta))
    double gamma_approx = 0.0;  // alpha + delta
};
SaddleAngle saddle_angle(double alpha, double delta);

}  // namespace gsqg
