#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace gsqg {

// Periodic n x n grid on [-L/2, L/2)^2; node (i, j) sits at (x1, x2) = (-L/2 + i h, -L/2 + j h),
// so the origin is node (n/2, n/2). Storage is row-major with i (the x1 index) slowest.
struct ScalarField {
    int n = 0;
    double box_length = 2.0 * std::numbers::pi;
    double time = 0.0;
    std::vector<double> values;

    ScalarField() = default;
    ScalarField(int n_, double box_length_);

    double spacing() const { return box_length / n; }
    double coord(int i) const { return -0.5 * box_length + i * spacing(); }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
    // Periodic index wrap.
    double wrapped(int i, int j) const { return at(((i % n) + n) % n, ((j % n) + n) % n); }
};

enum class InitialKind { saddle, elliptic, single_mode };
enum class Profile { tanh, linear };

std::string to_string(InitialKind k);
std::string to_string(Profile p);
InitialKind parse_initial_kind(const std::string& s);
Profile parse_profile(const std::string& s);

struct SimConfig {
    double beta = 1.5;
    int n = 256;
    double box_length = 2.0 * std::numbers::pi;
    double dt = 0.0;  // 0: fixed from the CFL limit at t = 0
    double t_end = 1.0;
    double dealias = 2.0 / 3.0;
    double cfl_max = 0.5;

    InitialKind initial_data = InitialKind::saddle;
    // Saddle: theta0 = g(rho) chi(|y|), rho = (alpha0 y1 + y2)(delta0 y1 - y2).
    // Elliptic: theta0 = g(a0 y1^2 + b0 y2^2) chi(|y|).
    // g(s) = offset + amplitude tanh(s / width) or offset + amplitude s / width.
    double alpha0 = 0.1;
    double delta0 = 0.1;
    double a0 = 1.0;
    double b0 = 2.0;
    Profile profile = Profile::tanh;
    double amplitude = 1.0;
    double width = 1.0;
    double offset = 1.0;
    double cutoff_radius = 2.5;
    // Single mode: cos(2 pi (mode_k1 x1 + mode_k2 x2) / box_length).
    int mode_k1 = 1;
    int mode_k2 = 0;

    double sigma = 0.5;
    std::pair<double, double> level_values{0.9, 0.99};
    int diag_every = 10;
    double contour_eps = 0.05;
    double fit_radius = 0.0;  // 0: 0.45 * cutoff_radius

    // Throws ConfigError naming the offending key.
    void validate() const;
    double effective_fit_radius() const { return fit_radius > 0.0 ? fit_radius : 0.45 * cutoff_radius; }
};

// C-infinity bump: 1 for r <= R/2, 0 for r >= R.
double smooth_cutoff(double r, double R);
double profile_value(const SimConfig& cfg, double s);
ScalarField make_initial_field(const SimConfig& cfg);

}  // namespace gsqg
