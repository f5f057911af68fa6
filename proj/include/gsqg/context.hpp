#pragma once

namespace gsqg {

enum class Normalization { riesz, unit };

// Planar Riesz constant of (-Delta)^{-(2-beta)/2}: Gamma(beta/2) / (2^{2-beta} pi Gamma((2-beta)/2)).
double riesz_constant(double beta);
double normalization_constant(double beta, Normalization n);

// Inputs of the stream-function lower bound near a saddle.
struct BoundContext {
    double beta = 1.5;
    double sigma = 0.25;
    double K_const = 1.5;     // O(L^-beta) <= K_const * L^-beta
    double L = 2.0;
    double N_sigma = 1.0;     // sup_t ||theta(t)||_{C^sigma}
    double theta0_inf = 1.0;  // inf_t |theta(0,t)|
    double C_beta_norm = 1.0;
    double r = 0.0;           // working radius; 0 means "not chosen yet"

    // Checks ranges, L above the admissible threshold and, when require_r,
    // 0 < r <= admissible radius.
    void validate(bool require_r = true) const;
};

}  // namespace gsqg
