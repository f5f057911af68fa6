#pragma once

#include <functional>
#include <vector>

namespace gsqg {

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    int subdivisions = 0;
};

struct GKOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;
    bool throw_on_failure = true;
};

// Globally adaptive 15-point Gauss-Kronrod on [a, b]. Endpoint singularities are
// fine as long as they are integrable (nodes are interior).
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        const GKOptions& opts = {});

// Same, with the interval pre-split at the sorted breakpoints inside (a, b).
QuadResult integrate_gk(const std::function<double(double)>& f, std::vector<double> points,
                        const GKOptions& opts = {});

// Trapezoid rule on a full period [0, period) with n nodes; spectrally accurate
// for smooth periodic integrands.
double periodic_trapezoid(const std::function<double(double)>& f, double period, int n);

}  // namespace gsqg
