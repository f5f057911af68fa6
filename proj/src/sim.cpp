#include "gsqg/sim.hpp"

#include "gsqg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gsqg {

namespace {

// Headroom so that the velocity may grow during the run before the fixed step trips the CFL check.
constexpr double kAutoCflFraction = 0.8;

bool all_finite(const Spectrum& s) {
    return std::all_of(s.begin(), s.end(), [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

}  // namespace

Solver::Solver(const SimConfig& cfg) : Solver(cfg, make_initial_field(cfg)) {}

Solver::Solver(const SimConfig& cfg, const ScalarField& initial) : cfg_(cfg), sp_(cfg.n, cfg.box_length) {
    cfg_.validate();
    if (initial.n != cfg.n || initial.box_length != cfg.box_length)
        throw PreconditionError("Solver: initial field does not match the configured grid");
    init(initial);
}

void Solver::init(const ScalarField& initial) {
    time_ = initial.time;
    theta_hat_ = sp_.forward(initial.values);
    sp_.dealias(theta_hat_, cfg_.dealias);
    if (!all_finite(theta_hat_)) throw PreconditionError("Solver: non-finite initial field");
    psi_mult_.assign(theta_hat_.size(), 1.0);
    psi_mult_ = sp_.riesz_stream_hat(psi_mult_, cfg_.beta);

    double umax = 0.0;
    rhs(theta_hat_, &umax);
    const double n = cfg_.n, L = cfg_.box_length;
    double dt = cfg_.dt;
    if (dt == 0.0) dt = umax > 0.0 ? kAutoCflFraction * cfg_.cfl_max * L / (n * umax) : cfg_.t_end;
    total_steps_ = cfg_.t_end > 0.0 ? static_cast<long>(std::ceil(cfg_.t_end / dt - 1e-9)) : 0;
    dt_ = total_steps_ > 0 ? cfg_.t_end / total_steps_ : 0.0;
}

Spectrum Solver::rhs(const Spectrum& th, double* umax) {
    Spectrum psi(th.size());
    for (std::size_t k = 0; k < th.size(); ++k) psi[k] = th[k] * psi_mult_[k];
    const std::vector<double> u1 = sp_.inverse(sp_.d2(psi));
    const std::vector<double> d1psi = sp_.inverse(sp_.d1(psi));
    const std::vector<double> t1 = sp_.inverse(sp_.d1(th));
    const std::vector<double> t2 = sp_.inverse(sp_.d2(th));
    std::vector<double> adv(u1.size());
    double m = 0.0;
    for (std::size_t k = 0; k < adv.size(); ++k) {
        adv[k] = u1[k] * t1[k] - d1psi[k] * t2[k];
        m = std::max(m, std::hypot(u1[k], d1psi[k]));
    }
    if (umax) *umax = m;
    Spectrum out = sp_.forward(adv);
    sp_.dealias(out, cfg_.dealias);
    for (auto& c : out) c = -c;
    out[0] = 0.0;
    return out;
}

void Solver::step() {
    if (dt_ <= 0.0) throw PreconditionError("Solver::step: no time step (t_end = 0)");
    double umax = 0.0;
    const Spectrum k1 = rhs(theta_hat_, &umax);
    const double cfl = dt_ * umax * cfg_.n / cfg_.box_length;
    if (cfl > cfg_.cfl_max * (1.0 + 1e-12)) {
        const double suggested = cfg_.cfl_max * cfg_.box_length / (cfg_.n * umax);
        std::ostringstream msg;
        msg << "CFL number " << cfl << " exceeds " << cfg_.cfl_max << " at t = " << time_ << "; suggested dt "
            << suggested;
        throw CflViolation(msg.str(), cfl, suggested);
    }
    const std::size_t m = theta_hat_.size();
    const double h = dt_;
    Spectrum tmp(m);
    for (std::size_t k = 0; k < m; ++k) tmp[k] = theta_hat_[k] + 0.5 * h * k1[k];
    const Spectrum k2 = rhs(tmp, nullptr);
    for (std::size_t k = 0; k < m; ++k) tmp[k] = theta_hat_[k] + 0.5 * h * k2[k];
    const Spectrum k3 = rhs(tmp, nullptr);
    for (std::size_t k = 0; k < m; ++k) tmp[k] = theta_hat_[k] + h * k3[k];
    const Spectrum k4 = rhs(tmp, nullptr);
    for (std::size_t k = 0; k < m; ++k) theta_hat_[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    ++steps_;
    time_ = steps_ == total_steps_ ? cfg_.t_end : time_ + h;
}

ScalarField Solver::field() {
    ScalarField f(cfg_.n, cfg_.box_length);
    f.time = time_;
    f.values = sp_.inverse(theta_hat_);
    return f;
}

DiagRecord Solver::diagnose(const std::optional<DiagRecord>& prev) {
    DiagRecord r = diagnostics(field(), cfg_, sp_, prev);
    r.step = steps_;
    return r;
}

ScalarField step(const ScalarField& f, const SimConfig& cfg) {
    SimConfig c = cfg;
    if (c.dt == 0.0) {
        c.t_end = 1.0;
        Solver probe(c, f);
        c.dt = probe.dt();
    }
    c.t_end = c.dt;
    ScalarField g = f;
    g.time = 0.0;
    Solver s(c, g);
    s.step();
    ScalarField out = s.field();
    out.time = f.time + c.dt;
    return out;
}

ScalarField run(const SimConfig& cfg, const DiagSink& sink) {
    Solver s(cfg);
    std::optional<DiagRecord> prev = s.diagnose(std::nullopt);
    sink(*prev);
    for (long k = 1; k <= s.total_steps(); ++k) {
        s.step();
        const bool emit = k % cfg.diag_every == 0 || k == s.total_steps();
        ScalarField f = s.field();
        if (!std::all_of(f.values.begin(), f.values.end(), [](double v) { return std::isfinite(v); })) {
            std::ostringstream msg;
            msg << "non-finite field at step " << k << ", t = " << s.time();
            throw NumericalBreakdown(msg.str(), prev);
        }
        if (emit) {
            prev = s.diagnose(prev);
            sink(*prev);
        }
    }
    return s.field();
}

}  // namespace gsqg
