#include "gsqg/bounds.hpp"

#include "gsqg/errors.hpp"
#include "gsqg/kernel.hpp"
#include "gsqg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gsqg {

namespace {

constexpr double pi = std::numbers::pi;

void require_beta(double beta, const char* who) {
    if (!(beta > 1.0 && beta < 2.0)) throw DomainError(std::string(who) + ": beta must lie in (1, 2)");
}

void require_tau(double tau, const char* who) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw PreconditionError(std::string(who) + ": tau must be >= 0");
}

}  // namespace

double riesz_constant(double beta) {
    require_beta(beta, "riesz_constant");
    return gamma_fn(beta / 2.0) / (std::pow(2.0, 2.0 - beta) * pi * gamma_fn((2.0 - beta) / 2.0));
}

double normalization_constant(double beta, Normalization n) {
    return n == Normalization::unit ? 1.0 : riesz_constant(beta);
}

void BoundContext::validate(bool require_r) const {
    require_beta(beta, "BoundContext");
    if (!(sigma > 0.0 && sigma < beta - 1.0))
        throw DomainError("BoundContext: sigma must lie in (0, beta - 1)");
    if (!(K_const > 0.0)) throw PreconditionError("BoundContext: K_const must be > 0");
    if (!(L > admissible_L(beta, K_const)))
        throw PreconditionError("BoundContext: L must exceed the admissible threshold " +
                                std::to_string(admissible_L(beta, K_const)));
    if (!(N_sigma > 0.0)) throw PreconditionError("BoundContext: N_sigma must be > 0");
    if (!(theta0_inf > 0.0)) throw PreconditionError("BoundContext: theta0_inf must be > 0");
    if (!(C_beta_norm > 0.0)) throw PreconditionError("BoundContext: C_beta_norm must be > 0");
    if (require_r) {
        if (!(r > 0.0)) throw PreconditionError("BoundContext: r must be > 0");
        if (r > admissible_radius(*this) * (1.0 + 1e-12))
            throw PreconditionError("BoundContext: r exceeds the admissible radius");
    }
}

double c_beta_L(double beta, double L, const SeriesControl& ctrl) {
    require_beta(beta, "c_beta_L");
    if (!(L >= 1.0)) throw DomainError("c_beta_L: L must be >= 1");
    const double head = a_beta(beta) * (beta - 1.0) / (2.0 - beta);
    return head + outer_power_series(beta, L, ctrl, CoefficientFamily::half_parameter).value;
}

double d_beta_L(double beta, double L, const SeriesControl& ctrl) {
    require_beta(beta, "d_beta_L");
    if (!(L >= 1.0)) throw DomainError("d_beta_L: L must be >= 1");
    if (L == 1.0) return 0.0;
    const double e = 2.0 - beta;
    const double tail_sum = outer_power_series(beta, L, ctrl, CoefficientFamily::half_parameter).value;
    return 2.0 * (std::pow(L, e) - 1.0) / e + (1.0 - a_beta(beta)) / e - tail_sum;
}

SeriesResult d_beta_L_direct(double beta, double L, const SeriesControl& ctrl) {
    require_beta(beta, "d_beta_L_direct");
    if (!(L >= 1.0)) throw DomainError("d_beta_L_direct: L must be >= 1");
    const double e = 2.0 - beta;
    const double lead = (std::pow(L, e) - 1.0) / e;
    double coeff = 1.0;
    double lpow = std::pow(L, e);
    const double inv_l2 = 1.0 / (L * L);
    auto term = [&](int m) {
        if (m > 0) {
            coeff *= (beta / 2.0 + m - 1) * (0.5 + m - 1) / (static_cast<double>(m) * m);
            lpow *= inv_l2;
        }
        return coeff * (lpow - 1.0) / (2.0 * (1.0 - m) - beta);
    };
    SeriesResult s = sum_power_series(term, ctrl, (beta - 5.0) / 2.0);
    s.value += lead;
    return s;
}

double admissible_L(double beta, double K_const) {
    require_beta(beta, "admissible_L");
    if (!(K_const > 0.0)) throw PreconditionError("admissible_L: K_const must be > 0");
    if (K_const >= beta) return 1.0;
    const double x = (beta - K_const) * (2.0 - beta) / (a_beta(beta) * (beta - 1.0));
    return std::max(1.0, std::pow(x, 1.0 / beta));
}

double admissible_radius(const BoundContext& ctx) {
    ctx.validate(false);
    const double bracket = 1.0 / (2.0 - ctx.beta) + a_beta(ctx.beta) +
                           std::pow(ctx.L, ctx.sigma) * d_beta_L(ctx.beta, ctx.L);
    const double rhs = c_beta_L(ctx.beta, ctx.L) / (std::pow(2.0, ctx.sigma + 2.0) * bracket) * ctx.theta0_inf /
                       ctx.N_sigma;
    return std::pow(rhs, 1.0 / ctx.sigma);
}

BoundContext with_admissible_radius(BoundContext ctx) {
    ctx.r = admissible_radius(ctx);
    return ctx;
}

double stream_lower_bound(const BoundContext& ctx, double tau) {
    require_tau(tau, "stream_lower_bound");
    if (tau == 0.0) return 0.0;
    if (ctx.r > 0.0 && tau > 2.0 * ctx.r)
        throw PreconditionError("stream_lower_bound: tau > 2r, both points must lie in B_r(0)");
    const double b = ctx.beta;
    return ctx.C_beta_norm * pi * std::pow(tau, 2.0 - b) * std::fabs(ctx.theta0_inf) * a_beta(b) * (b - 1.0) /
           (2.0 - b);
}

UpperBoundConstants stream_upper_constants(double beta, const FieldNorms& norms, double L_cut, double C_beta) {
    require_beta(beta, "stream_upper_constants");
    if (!(L_cut >= 1.0)) throw PreconditionError("stream_upper_constants: L_cut must be >= 1");
    if (!(norms.sup_norm >= 0.0) || !(norms.l2_norm >= 0.0))
        throw PreconditionError("stream_upper_constants: norms must be >= 0");
    const double e = 2.0 - beta;
    UpperBoundConstants k;
    k.c2 = 8.0 * pi * beta * C_beta * norms.sup_norm;
    k.c1 = C_beta * norms.sup_norm * 2.0 * pi * (std::pow(2.0, e) + std::pow(3.0, e)) / e +
           k.c2 * std::max(0.0, std::log(L_cut / 2.0));
    k.c3 = C_beta * norms.l2_norm * std::sqrt(pi * beta) * std::pow(L_cut, -beta) *
           std::pow(1.0 - 0.5 / L_cut, -beta - 1.0);
    return k;
}

double stream_upper_bound(double beta, double tau, const FieldNorms& norms, double L_cut, double C_beta) {
    require_tau(tau, "stream_upper_bound");
    if (!(tau < 0.5)) throw PreconditionError("stream_upper_bound: tau must be < 1/2");
    if (tau == 0.0) return 0.0;
    const UpperBoundConstants k = stream_upper_constants(beta, norms, L_cut, C_beta);
    const double p = std::pow(tau, 2.0 - beta);
    return (k.c1 + k.c2 * std::fabs(std::log(tau)) + k.c3) * p;
}

namespace {

double remainder_prefactor(const BoundContext& ctx, double tau, double p1_norm) {
    if (!(p1_norm >= 0.0)) throw PreconditionError("remainder bound: |p1| must be >= 0");
    return 2.0 * pi * ctx.C_beta_norm * ctx.N_sigma * std::pow(tau, 2.0 - ctx.beta) *
           (std::pow(p1_norm, ctx.sigma) + std::pow(tau, ctx.sigma));
}

}  // namespace

double remainder_i2_bound(const BoundContext& ctx, double tau, double p1_norm) {
    require_tau(tau, "remainder_i2_bound");
    if (tau == 0.0) return 0.0;
    const double bracket =
        1.0 / (2.0 - ctx.beta) + a_beta(ctx.beta) + std::pow(ctx.L, ctx.sigma) * d_beta_L(ctx.beta, ctx.L);
    return remainder_prefactor(ctx, tau, p1_norm) * bracket;
}

I3Routes remainder_i3_routes(const BoundContext& ctx, double tau, double p1_norm) {
    require_tau(tau, "remainder_i3_bound");
    const double b = ctx.beta, s = ctx.sigma;
    if (!(s < b - 1.0)) throw DomainError("remainder_i3_bound: sigma must be < beta - 1");
    if (tau == 0.0) return {};
    const double pre = remainder_prefactor(ctx, tau, p1_norm);
    I3Routes r;
    r.power = pre * (1.0 / (b - s - 1.0) + (b + 1.0) / (b - s)) * std::pow(ctx.L, s + 1.0 - b);
    r.incomplete_beta = pre * inc_beta(1.0 / ctx.L, b - s - 1.0, -b);
    return r;
}

double remainder_i3_bound(const BoundContext& ctx, double tau, double p1_norm) {
    return remainder_i3_routes(ctx, tau, p1_norm).certified();
}

double velocity_sup_bound(double beta, double lambda, double holder_norm, double sup_norm, double eps, double k,
                          double C) {
    require_beta(beta, "velocity_sup_bound");
    if (!(lambda > beta - 1.0)) throw DomainError("velocity_sup_bound: lambda must exceed beta - 1");
    if (!(lambda < 1.0)) throw DomainError("velocity_sup_bound: lambda must be < 1");
    if (!(eps > 0.0) || !(k > eps)) throw PreconditionError("velocity_sup_bound: need k > eps > 0");
    const double g = 1.0 - beta + lambda;
    return C / g * holder_norm * (std::pow(eps, g) + std::pow(k, g)) +
           C * sup_norm * std::pow(k, 1.0 - beta) / (beta - 1.0);
}

StreamBoundReport stream_bound_report(const BoundContext& ctx, double tau, double p1_norm, const FieldNorms& norms,
                                      double L_cut) {
    StreamBoundReport rep;
    rep.tau = tau;
    rep.lower = stream_lower_bound(ctx, tau);
    rep.upper_terms = stream_upper_constants(ctx.beta, norms, L_cut, ctx.C_beta_norm);
    rep.upper = tau < 0.5 ? stream_upper_bound(ctx.beta, tau, norms, L_cut, ctx.C_beta_norm)
                          : std::numeric_limits<double>::quiet_NaN();
    rep.i2_bound = remainder_i2_bound(ctx, tau, p1_norm);
    rep.i3_bound = remainder_i3_bound(ctx, tau, p1_norm);
    rep.i4_bound = farfield_i4_bound(ctx, tau, ctx.K_const);
    return rep;
}

RemainderCheck check_remainders(const BoundContext& ctx) {
    const BoundContext c = with_admissible_radius(ctx);
    const double tau = 2.0 * c.r;
    RemainderCheck out;
    out.i1 = i1_closed(c, tau);
    out.i2 = remainder_i2_bound(c, tau, c.r);
    out.i3 = remainder_i3_bound(c, tau, c.r);
    out.ratio = (out.i2 + out.i3) / out.i1;
    out.remainder_ok = out.i2 + out.i3 <= 0.5 * out.i1;
    const double shift = (c.beta - c.K_const) * std::pow(c.L, -c.beta);
    const double floor_term = a_beta(c.beta) * (c.beta - 1.0) / (2.0 - c.beta) - shift;
    out.positivity_ok = c_beta_L(c.beta, c.L) - shift > floor_term && floor_term > 0.0;
    return out;
}

}  // namespace gsqg
