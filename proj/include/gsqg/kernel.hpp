#pragma once

#include "gsqg/context.hpp"
#include "gsqg/quadrature.hpp"
#include "gsqg/series.hpp"

namespace gsqg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// K(z, v) = |z|^-beta - |z - v|^-beta over the annulus r_in < |z| < r_out.
struct KernelSpec {
    double beta = 1.5;
    Vec2 v{1.0, 0.0};
    double r_in = 0.0;
    double r_out = 1.0;

    void validate() const;
};

struct QuadControl {
    double abs_tol = 1e-10;
    int max_subdivisions = 4000;
    double singularity_ring_width = 0.05;

    void validate() const;
};

double kernel_diff(Vec2 z, const KernelSpec& spec);

// Two coefficient families for the angular average of |z - v|^-beta.
//   exact:          ((beta/2)_m / m!)^2, i.e. 2F1(beta/2, beta/2; 1; r^2); this is the
//                   true value of the integral.
//   half_parameter: (beta/2)_m (1/2)_m / (m!)^2, i.e. 2F1(beta/2, 1/2; 1; r^2); coincides
//                   with the integral only at beta = 1, but it is the family that
//                   defines A(beta), C(beta,L) and D(beta,L).
enum class CoefficientFamily { exact, half_parameter };

const char* to_string(CoefficientFamily f);

// Integral over [0, 2pi) of (r^2 + 1 - 2 r cos t)^(-beta/2); r > 0, r != 1.
double angular_integral(double r, double beta, CoefficientFamily family = CoefficientFamily::exact);

// Same integral by the periodic trapezoid rule, doubling nodes until two
// successive values agree to tol.
double angular_integral_trapezoid(double r, double beta, double tol = 1e-13);

// sum_m coeff_m / (2m + 2): A(beta) for half_parameter,
// Gamma(2-beta) / (2 Gamma(2-beta/2)^2) for exact.
double disk_mass(double beta, CoefficientFamily family = CoefficientFamily::exact);

// sum_{m>=1} coeff_m L^(2-beta-2m) / (2m + beta - 2), L >= 1.
SeriesResult outer_power_series(double beta, double L, const SeriesControl& ctrl,
                                CoefficientFamily family = CoefficientFamily::exact);

// Integral of K over 0 < |z| < 1.
double annulus_inner(double beta, CoefficientFamily family = CoefficientFamily::exact);

// Integral of K over 1 < |z| < L (L >= 1; L = 1 gives 0).
double annulus_outer(double beta, double L, const SeriesControl& ctrl = {},
                     CoefficientFamily family = CoefficientFamily::exact);

// Leading term C_beta tau^(2-beta) 2 pi |theta(0)| C(beta, L).
double i1_closed(const BoundContext& ctx, double tau);

// Far-field bound C_beta tau^(2-beta) |theta(0)| L^-beta (beta pi + 2 pi K_remainder).
double farfield_i4_bound(const BoundContext& ctx, double tau, double K_remainder);

// Integral of K over the annulus by polar coordinates about each singular point:
// analytic radial antiderivative inside singularity_ring_width, adaptive
// Gauss-Kronrod outside and in angle. Throws AccuracyError with the best estimate.
QuadResult quad_kernel_annulus(const KernelSpec& spec, const QuadControl& ctrl = {});

}  // namespace gsqg
