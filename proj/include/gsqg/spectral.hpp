#pragma once

#include "gsqg/field.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace gsqg {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;  // r2c layout: n x (n/2 + 1), row-major

struct VelocityField {
    std::vector<double> u1, u2;
};

// FFTW-backed transforms and multipliers for one (n, box_length). Owns scratch
// buffers, so a single instance must not be used from two threads at once.
class Spectral {
public:
    Spectral(int n, double box_length);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    int n() const { return n_; }
    int half() const { return n_ / 2 + 1; }
    double box_length() const { return box_length_; }
    // Integer wavenumber along x1 for row i, along x2 for column j.
    int mode1(int i) const { return i <= n_ / 2 ? i : i - n_; }
    int mode2(int j) const { return j; }
    double k1(int i) const { return kscale_ * mode1(i); }
    double k2(int j) const { return kscale_ * mode2(j); }

    Spectrum forward(const std::vector<double>& x);
    // Normalized inverse: inverse(forward(x)) == x.
    std::vector<double> inverse(const Spectrum& s);

    // psi_hat = |k|^(beta-2) theta_hat, psi_hat(0) = 0.
    Spectrum riesz_stream_hat(const Spectrum& theta_hat, double beta) const;
    // Multiply by |k|^p on nonzero modes, zero the mean.
    Spectrum apply_power(const Spectrum& s, double p) const;
    Spectrum d1(const Spectrum& s) const;  // d/dx1; Nyquist row zeroed
    Spectrum d2(const Spectrum& s) const;  // d/dx2; Nyquist column zeroed
    // Zero modes with |m1| or |m2| above dealias * n / 2.
    void dealias(Spectrum& s, double fraction) const;
    bool is_dealiased(const Spectrum& s, double fraction, double tol) const;

    // Band-limited interpolant at a physical point (x1, x2).
    double evaluate(const Spectrum& s, double x1, double x2) const;

private:
    int n_;
    double box_length_;
    double kscale_;
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

ScalarField riesz_stream(const ScalarField& theta, double beta, Spectral& sp);
ScalarField riesz_stream(const ScalarField& theta, double beta);
// u = -grad_perp psi = (d2 psi, -d1 psi).
VelocityField velocity(const ScalarField& theta, double beta, Spectral& sp);
VelocityField velocity(const ScalarField& theta, double beta);
// Spectral divergence of a velocity field, relative to max|u| (0 for u = 0).
double relative_divergence(const VelocityField& u, Spectral& sp);
double max_speed(const VelocityField& u);

}  // namespace gsqg
