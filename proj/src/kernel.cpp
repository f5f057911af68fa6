#include "gsqg/kernel.hpp"

#include "gsqg/bounds.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/specfun.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace gsqg {

namespace {

constexpr double pi = std::numbers::pi;

void require_beta(double beta, const char* who) {
    if (!(beta > 1.0 && beta < 2.0))
        throw DomainError(std::string(who) + ": beta must lie in (1, 2)");
}

double second_parameter(double beta, CoefficientFamily f) {
    return f == CoefficientFamily::exact ? beta / 2.0 : 0.5;
}

}  // namespace

const char* to_string(CoefficientFamily f) {
    return f == CoefficientFamily::exact ? "exact" : "half_parameter";
}

void KernelSpec::validate() const {
    require_beta(beta, "KernelSpec");
    const double n = std::hypot(v.x, v.y);
    if (std::fabs(n - 1.0) > 1e-12) throw PreconditionError("KernelSpec: |v| must be 1");
    if (!(r_in >= 0.0) || !(r_out > r_in)) throw PreconditionError("KernelSpec: need r_out > r_in >= 0");
}

void QuadControl::validate() const {
    if (!(abs_tol > 0.0)) throw PreconditionError("QuadControl.abs_tol must be > 0");
    if (max_subdivisions < 1) throw PreconditionError("QuadControl.max_subdivisions must be >= 1");
    if (!(singularity_ring_width > 0.0))
        throw PreconditionError("QuadControl.singularity_ring_width must be > 0");
}

double kernel_diff(Vec2 z, const KernelSpec& spec) {
    const double r0 = std::hypot(z.x, z.y);
    const double r1 = std::hypot(z.x - spec.v.x, z.y - spec.v.y);
    if (r0 == 0.0 || r1 == 0.0) throw DomainError("kernel_diff: z is a singular point");
    return std::pow(r0, -spec.beta) - std::pow(r1, -spec.beta);
}

double angular_integral(double r, double beta, CoefficientFamily family) {
    if (!(r > 0.0)) throw DomainError("angular_integral: r must be > 0");
    if (r == 1.0) throw DomainError("angular_integral: r = 1 gives a divergent series at z = 1");
    const double b = second_parameter(beta, family);
    SeriesControl ctrl;
    ctrl.abs_tol = 1e-17;
    if (r < 1.0) return 2.0 * pi * hyp2f1({beta / 2.0, b, 1.0, r * r}, ctrl);
    return 2.0 * pi * std::pow(r, -beta) * hyp2f1({beta / 2.0, b, 1.0, 1.0 / (r * r)}, ctrl);
}

double angular_integral_trapezoid(double r, double beta, double tol) {
    if (!(r > 0.0) || r == 1.0) throw DomainError("angular_integral_trapezoid: need r > 0, r != 1");
    auto f = [&](double t) { return std::pow(r * r + 1.0 - 2.0 * r * std::cos(t), -beta / 2.0); };
    int n = 16;
    double prev = periodic_trapezoid(f, 2.0 * pi, n);
    for (int it = 0; it < 24; ++it) {
        n *= 2;
        const double cur = periodic_trapezoid(f, 2.0 * pi, n);
        if (std::fabs(cur - prev) <= tol * std::max(1.0, std::fabs(cur))) return cur;
        prev = cur;
    }
    throw AccuracyError("angular_integral_trapezoid: no convergence", prev, 0.0);
}

double disk_mass(double beta, CoefficientFamily family) {
    if (!(beta > 0.0 && beta < 2.0)) throw DomainError("disk_mass: beta outside (0, 2)");
    if (family == CoefficientFamily::half_parameter) return a_beta(beta);
    const double g = gamma_fn(2.0 - beta / 2.0);
    return gamma_fn(2.0 - beta) / (2.0 * g * g);
}

SeriesResult outer_power_series(double beta, double L, const SeriesControl& ctrl, CoefficientFamily family) {
    if (!(beta > 0.0 && beta < 2.0)) throw DomainError("outer_power_series: beta outside (0, 2)");
    if (!(L >= 1.0)) throw DomainError("outer_power_series: L must be >= 1");
    const double b = second_parameter(beta, family);
    const double inv_l2 = std::isinf(L) ? 0.0 : 1.0 / (L * L);
    double coeff = 1.0;
    double lpow = std::isinf(L) ? 0.0 : std::pow(L, 2.0 - beta);
    auto term = [&](int k) {
        const int m = k + 1;
        coeff *= (beta / 2.0 + m - 1) * (b + m - 1) / (static_cast<double>(m) * m);
        lpow *= inv_l2;
        return coeff * lpow / (2.0 * m + beta - 2.0);
    };
    std::optional<double> decay;
    if (L == 1.0) decay = family == CoefficientFamily::exact ? beta - 3.0 : (beta - 5.0) / 2.0;
    return sum_power_series(term, ctrl, decay);
}

double annulus_inner(double beta, CoefficientFamily family) {
    require_beta(beta, "annulus_inner");
    return 2.0 * pi * (1.0 / (2.0 - beta) - disk_mass(beta, family));
}

double annulus_outer(double beta, double L, const SeriesControl& ctrl, CoefficientFamily family) {
    require_beta(beta, "annulus_outer");
    // sum_{m>=1} coeff_m / (2m + beta - 2) in closed form, per family.
    const double head = family == CoefficientFamily::exact
                            ? 1.0 / (2.0 - beta) - disk_mass(beta, family)
                            : (1.0 - a_beta(beta)) / (2.0 - beta);
    return 2.0 * pi * (outer_power_series(beta, L, ctrl, family).value - head);
}

double i1_closed(const BoundContext& ctx, double tau) {
    if (!(tau >= 0.0)) throw PreconditionError("i1_closed: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    return ctx.C_beta_norm * std::pow(tau, 2.0 - ctx.beta) * 2.0 * pi * std::fabs(ctx.theta0_inf) *
           c_beta_L(ctx.beta, ctx.L);
}

double farfield_i4_bound(const BoundContext& ctx, double tau, double K_remainder) {
    if (!(tau >= 0.0)) throw PreconditionError("farfield_i4_bound: tau must be >= 0");
    if (!(ctx.L > 1.0)) throw PreconditionError("farfield_i4_bound: L must be > 1");
    if (!(K_remainder > 0.0)) throw PreconditionError("farfield_i4_bound: K_remainder must be > 0");
    if (tau == 0.0) return 0.0;
    const double pre = ctx.C_beta_norm * std::pow(tau, 2.0 - ctx.beta) * std::fabs(ctx.theta0_inf) *
                       std::pow(ctx.L, -ctx.beta);
    return pre * (ctx.beta * pi + 2.0 * pi * K_remainder);
}

namespace {

struct Interval {
    double lo, hi;
};

// rho-range (rho > 0) where |c + rho e|^2 < R^2, c at distance d in {0, 1} from the
// origin and cos_phi = (c/|c|) . e.
std::optional<Interval> disk_chord(double d, double cos_phi, double R) {
    if (R <= 0.0) return std::nullopt;
    if (d == 0.0) return Interval{0.0, R};
    const double disc = cos_phi * cos_phi + R * R - 1.0;
    if (R > 1.0) return Interval{0.0, -cos_phi + std::sqrt(disc)};
    if (R == 1.0) {
        const double hi = -2.0 * cos_phi;
        if (hi <= 0.0) return std::nullopt;
        return Interval{0.0, hi};
    }
    if (cos_phi >= 0.0 || disc <= 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    return Interval{-cos_phi - s, -cos_phi + s};
}

// Integral over the annulus of |z - c|^-beta with c at distance d from the origin.
QuadResult centred_power_integral(double beta, double d, double r_in, double r_out, const QuadControl& ctrl,
                                  bool& ok) {
    const double w = ctrl.singularity_ring_width;
    const double e = 2.0 - beta;
    GKOptions radial;
    radial.abs_tol = ctrl.abs_tol * 1e-3;
    radial.rel_tol = 1e-13;
    radial.max_subdivisions = 200;
    radial.throw_on_failure = false;

    auto radial_integral = [&](double lo, double hi) {
        if (hi <= lo) return 0.0;
        double acc = 0.0;
        const double mid = std::min(hi, w);
        if (mid > lo) acc += (std::pow(mid, e) - std::pow(lo, e)) / e;
        const double a = std::max(lo, w);
        if (hi > a) acc += integrate_gk([&](double rho) { return std::pow(rho, 1.0 - beta); }, a, hi, radial).value;
        return acc;
    };

    auto F = [&](double phi) {
        const double c = std::cos(phi);
        const auto outer = disk_chord(d, c, r_out);
        if (!outer) return 0.0;
        const auto inner = disk_chord(d, c, r_in);
        if (!inner) return radial_integral(outer->lo, outer->hi);
        return radial_integral(outer->lo, inner->lo) + radial_integral(inner->hi, outer->hi);
    };

    std::vector<double> pts{0.0, pi};
    if (d != 0.0) {
        for (double R : {r_in, r_out}) {
            if (R > 0.0 && R < 1.0) pts.push_back(std::acos(-std::sqrt(1.0 - R * R)));
            if (R == 1.0) pts.push_back(pi / 2.0);
        }
    }
    GKOptions ang;
    ang.abs_tol = ctrl.abs_tol / 8.0;
    ang.rel_tol = 0.0;
    ang.max_subdivisions = ctrl.max_subdivisions;
    ang.throw_on_failure = false;
    QuadResult r = integrate_gk(F, pts, ang);
    ok = ok && r.err_est <= ang.abs_tol;
    // Symmetric in phi -> -phi.
    return {2.0 * r.value, 2.0 * r.err_est, r.subdivisions};
}

}  // namespace

QuadResult quad_kernel_annulus(const KernelSpec& spec, const QuadControl& ctrl) {
    spec.validate();
    ctrl.validate();
    // Rotation invariance: v is taken as (1, 0).
    bool ok = true;
    const QuadResult a = centred_power_integral(spec.beta, 0.0, spec.r_in, spec.r_out, ctrl, ok);
    const QuadResult b = centred_power_integral(spec.beta, 1.0, spec.r_in, spec.r_out, ctrl, ok);
    QuadResult res{a.value - b.value, a.err_est + b.err_est, a.subdivisions + b.subdivisions};
    if (!ok || res.err_est > ctrl.abs_tol)
        throw AccuracyError("quad_kernel_annulus: tolerance not reached", res.value, res.err_est);
    return res;
}

}  // namespace gsqg
