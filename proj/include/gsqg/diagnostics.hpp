#pragma once

#include "gsqg/field.hpp"
#include "gsqg/spectral.hpp"

#include <optional>

namespace gsqg {

struct DiagRecord {
    double time = 0.0;
    double sup_theta = 0.0;
    double l2_theta = 0.0;
    double sup_grad = 0.0;
    double holder_seminorm = 0.0;
    double theta_at_origin = 0.0;
    std::optional<double> opening_angle;
    std::optional<double> level_distance;
    double holder_time_integral = 0.0;  // trapezoid rule over sup_theta + holder_seminorm
    double sup_velocity = 0.0;
    long step = 0;

    double holder_norm() const { return sup_theta + holder_seminorm; }
};

// Max of |f(x) - f(y)| / |x - y|^sigma over every node x and offsets y - x along
// (1,0), (0,1), (1,1), (1,-1), (2,1), (1,2), (2,-1), (1,-2) scaled by 2^k, up to n/2 nodes.
double holder_seminorm_grid(const ScalarField& f, double sigma);

// Max |grad f| from spectral derivatives.
double sup_gradient(const ScalarField& f, Spectral& sp);

DiagRecord diagnostics(const ScalarField& f, const SimConfig& cfg, Spectral& sp,
                       const std::optional<DiagRecord>& prev = std::nullopt);

}  // namespace gsqg
