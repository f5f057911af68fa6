#pragma once

#include "gsqg/diagnostics.hpp"
#include "gsqg/field.hpp"
#include "gsqg/spectral.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace gsqg {

// dt * max|u| * n / box_length exceeded cfl_max.
class CflViolation : public std::runtime_error {
public:
    CflViolation(const std::string& what, double cfl, double suggested_dt)
        : std::runtime_error(what), cfl_(cfl), suggested_dt_(suggested_dt) {}
    double cfl() const { return cfl_; }
    double suggested_dt() const { return suggested_dt_; }

private:
    double cfl_;
    double suggested_dt_;
};

// Non-finite state; carries the last record emitted before the failure.
class NumericalBreakdown : public std::runtime_error {
public:
    NumericalBreakdown(const std::string& what, std::optional<DiagRecord> last_good)
        : std::runtime_error(what), last_good_(std::move(last_good)) {}
    const std::optional<DiagRecord>& last_good() const { return last_good_; }

private:
    std::optional<DiagRecord> last_good_;
};

// Pseudo-spectral RK4 for theta_t + u . grad theta = 0 on the periodic box. The state is
// kept in Fourier space and projected onto the dealiased modes at construction; the
// mean of theta is conserved and untouched, psi_hat(0) = 0.
class Solver {
public:
    explicit Solver(const SimConfig& cfg);
    Solver(const SimConfig& cfg, const ScalarField& initial);

    const SimConfig& config() const { return cfg_; }
    double time() const { return time_; }
    long steps_taken() const { return steps_; }
    // Step size in use: cfg.dt, or 0.8 cfl_max L / (n max|u|) measured at t = 0, shrunk so
    // that a whole number of steps reaches t_end.
    double dt() const { return dt_; }
    long total_steps() const { return total_steps_; }

    // One RK4 step of size dt(); throws CflViolation before touching the state.
    void step();
    ScalarField field();
    DiagRecord diagnose(const std::optional<DiagRecord>& prev);
    Spectral& spectral() { return sp_; }

private:
    Spectrum rhs(const Spectrum& th, double* umax);
    void init(const ScalarField& initial);

    SimConfig cfg_;
    Spectral sp_;
    Spectrum theta_hat_;
    Spectrum psi_mult_;
    double time_ = 0.0;
    double dt_ = 0.0;
    long steps_ = 0;
    long total_steps_ = 0;
};

// One step of size cfg.dt (cfg.dt = 0 picks the CFL step) on a field.
ScalarField step(const ScalarField& f, const SimConfig& cfg);

using DiagSink = std::function<void(const DiagRecord&)>;

// Runs to cfg.t_end, emitting a record at step 0, every diag_every steps and at the end.
ScalarField run(const SimConfig& cfg, const DiagSink& sink);

}  // namespace gsqg
