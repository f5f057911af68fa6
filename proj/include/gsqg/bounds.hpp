#pragma once

#include "gsqg/context.hpp"
#include "gsqg/series.hpp"

namespace gsqg {

// C(beta,L) = A(beta)(beta-1)/(2-beta) + sum_{m>=1} c_m L^(2-beta-2m)/(2(m-1)+beta),
// c_m = (beta/2)_m (1/2)_m / (m!)^2. L = infinity is accepted.
double c_beta_L(double beta, double L, const SeriesControl& ctrl = {});

// D(beta,L) = (L^(2-beta)-1)/(2-beta) + sum_{m>=0} c_m (L^(2-beta-2m)-1)/(2(1-m)-beta),
// evaluated through the closed form of sum_{m>=1} c_m/(2m+beta-2).
double d_beta_L(double beta, double L, const SeriesControl& ctrl = {});

// Same quantity summed term by term with a power-law tail.
SeriesResult d_beta_L_direct(double beta, double L, const SeriesControl& ctrl = {});

// Infimum of admissible L: 1 if K >= beta, else max{1, ((beta-K)(2-beta)/(A(beta)(beta-1)))^(1/beta)}.
double admissible_L(double beta, double K_const);

// Largest r with r^sigma <= C/(2^(sigma+2)(1/(2-beta) + A + L^sigma D)) * theta0_inf / N_sigma.
// ctx.r is ignored.
double admissible_radius(const BoundContext& ctx);

// Returns ctx with r set to admissible_radius(ctx).
BoundContext with_admissible_radius(BoundContext ctx);

// C_beta pi tau^(2-beta) |theta(0)| A(beta)(beta-1)/(2-beta); requires tau <= 2r.
double stream_lower_bound(const BoundContext& ctx, double tau);

struct FieldNorms {
    double sup_norm = 0.0;
    double l2_norm = 0.0;
};

// |psi(p1) - psi(p2)| <= c1 tau^(2-beta) + c2 tau^(2-beta)|ln tau| + c3 tau^(2-beta).
struct UpperBoundConstants {
    double c1 = 0.0;  // near field |y - p1| < 2 tau, plus the ln(L_cut/2) part of the mid field
    double c2 = 0.0;  // mid field 2 tau < |y - p1| < L_cut
    double c3 = 0.0;  // far field |y - p1| > L_cut, through the L2 norm
};

UpperBoundConstants stream_upper_constants(double beta, const FieldNorms& norms, double L_cut,
                                           double C_beta);
double stream_upper_bound(double beta, double tau, const FieldNorms& norms, double L_cut, double C_beta);

// C_beta 2pi tau^(2-beta) N_sigma (|p1|^sigma + tau^sigma) [1/(2-beta) + A + L^sigma D].
double remainder_i2_bound(const BoundContext& ctx, double tau, double p1_norm);

struct I3Routes {
    double power = 0.0;           // (1/(beta-sigma-1) + (beta+1)/(beta-sigma)) L^(sigma+1-beta)
    double incomplete_beta = 0.0;  // B_{1/L}(beta-sigma-1, -beta)
    double certified() const { return power > incomplete_beta ? power : incomplete_beta; }
};

I3Routes remainder_i3_routes(const BoundContext& ctx, double tau, double p1_norm);
double remainder_i3_bound(const BoundContext& ctx, double tau, double p1_norm);

// C/(1-beta+lambda) ||theta||_{C^lambda} (eps^(1-beta+lambda) + k^(1-beta+lambda))
//   + C ||theta0||_inf k^(1-beta)/(beta-1).
double velocity_sup_bound(double beta, double lambda, double holder_norm, double sup_norm, double eps,
                          double k, double C = 1.0);

struct StreamBoundReport {
    double tau = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double i2_bound = 0.0;
    double i3_bound = 0.0;
    double i4_bound = 0.0;
    UpperBoundConstants upper_terms;
};

StreamBoundReport stream_bound_report(const BoundContext& ctx, double tau, double p1_norm,
                                      const FieldNorms& norms, double L_cut);

// Remainder-vs-leading-term check at the supremum of the admissible set
// (|p1| = r, tau = 2r), and the positivity certificate
// C(beta,L) - (beta-K)L^-beta > A(beta)(beta-1)/(2-beta) - (beta-K)L^-beta > 0.
struct RemainderCheck {
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
    double ratio = 0.0;  // (i2 + i3) / i1
    bool remainder_ok = false;
    bool positivity_ok = false;
};

RemainderCheck check_remainders(const BoundContext& ctx);

}  // namespace gsqg
