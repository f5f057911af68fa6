#include "doctest.h"

#include "gsqg/bounds.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/kernel.hpp"
#include "gsqg/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include <cmath>
#include <numbers>

using namespace gsqg;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// mpmath at 30 digits: term-by-term integrated hypergeometric series.
struct AnnulusRef {
    double beta, inner, outer15, outer2, outer4;
};
constexpr AnnulusRef kAnnulus[] = {
    {1.2, 3.2079409429864778, -1.8907099330295571, -2.33154909847432865, -2.84529099528604358},
    {1.5, 5.78866593600731538, -4.25574475880710742, -4.87635863279887119, -5.48789120438035361},
    {1.8, 15.480597587404169682, -13.75448278301245635, -14.565660014112008761, -15.240941660358020986},
};

struct AngularRef {
    double r, beta, value;
};
constexpr AngularRef kAngular[] = {
    {0.1, 1.2, 6.30595063510050622}, {0.1, 1.8, 6.33454275797673888}, {0.5, 1.2, 6.96051208533774706},
    {0.5, 1.8, 7.93065362879834735}, {0.9, 1.2, 10.990471068417837},  {0.9, 1.8, 24.0036200037810851},
    {1.5, 1.2, 4.74917836339805813}, {1.5, 1.8, 4.87187033300730424}, {2.0, 1.2, 3.02973885836012779},
    {2.0, 1.8, 2.2774821943629819},  {5.0, 1.2, 0.924246468114127852}, {5.0, 1.8, 0.358420383779263731},
    {0.5, 1.5, 7.38150172098338},    {2.0, 1.5, 2.60975496112376},
};

}  // namespace

TEST_CASE("kernel_diff") {
    KernelSpec s;
    s.beta = 1.5;
    CHECK(kernel_diff({0.5, 3.7}, s) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kernel_diff({2.0, 0.0}, s) == doctest::Approx(std::pow(2.0, -1.5) - 1.0).epsilon(1e-15));
    CHECK(kernel_diff({0.5, 0.5}, s) == 0.0);
    CHECK_THROWS_AS(kernel_diff({0.0, 0.0}, s), DomainError);
    CHECK_THROWS_AS(kernel_diff({1.0, 0.0}, s), DomainError);
}

TEST_CASE("KernelSpec validation") {
    KernelSpec s;
    s.v = {0.6, 0.6};
    CHECK_THROWS_AS(s.validate(), PreconditionError);
    s.v = {0.6, 0.8};
    s.r_in = 2.0;
    s.r_out = 1.0;
    CHECK_THROWS_AS(s.validate(), PreconditionError);
}

TEST_CASE("angular_integral matches reference values") {
    for (const auto& a : kAngular) CHECK(rel(angular_integral(a.r, a.beta), a.value) < 1e-12);
    CHECK(angular_integral(1e-8, 1.5) == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK_THROWS_AS(angular_integral(1.0, 1.5), DomainError);
}

TEST_CASE("angular_integral matches Boost trapezoid quadrature") {
    for (double beta : {1.2, 1.5, 1.8})
        for (double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.5, 2.0, 5.0}) {
            auto f = [&](double t) { return std::pow(r * r + 1.0 - 2.0 * r * std::cos(t), -beta / 2.0); };
            const double oracle = boost::math::quadrature::trapezoidal(f, 0.0, 2.0 * pi, 1e-14);
            CHECK(std::fabs(angular_integral(r, beta) - oracle) <= 1e-8);
            CHECK(std::fabs(angular_integral_trapezoid(r, beta) - oracle) <= 1e-10);
        }
}

TEST_CASE("half-parameter family agrees with the integral only at beta = 1") {
    CHECK(rel(angular_integral(0.5, 1.0, CoefficientFamily::half_parameter), angular_integral(0.5, 1.0)) < 1e-14);
    CHECK(std::fabs(angular_integral(0.5, 1.5, CoefficientFamily::half_parameter) - 6.99215347811232) < 1e-10);
    CHECK(std::fabs(angular_integral(2.0, 1.5, CoefficientFamily::half_parameter) - 2.47209956973516) < 1e-10);
    CHECK(std::fabs(angular_integral(0.5, 1.5, CoefficientFamily::half_parameter) -
                    angular_integral_trapezoid(0.5, 1.5)) > 0.3);
}

TEST_CASE("disk_mass closed forms") {
    SeriesControl c;
    c.abs_tol = 1e-12;
    for (double beta : {1.2, 1.5, 1.8}) {
        CHECK(rel(disk_mass(beta, CoefficientFamily::half_parameter), a_beta(beta)) < 1e-15);
        // sum of ((beta/2)_m/m!)^2 / (2m+2) by direct summation.
        double cm = 1.0, s = 0.0;
        for (int m = 0; m < 2'000'000; ++m) {
            if (m > 0) cm *= std::pow((beta / 2.0 + m - 1) / m, 2);
            s += cm / (2.0 * m + 2.0);
        }
        const double p = beta - 3.0;
        const double M = 2'000'000 - 1;
        const double tail = cm / (2.0 * M + 2.0) / std::pow(M, p) * std::pow(M + 0.5, p + 1.0) / (-(p + 1.0));
        // Tail model error is O(M^(beta - 3)), about 3e-8 at beta = 1.8.
        CHECK(std::fabs(disk_mass(beta) - (s + tail)) < 1e-7);
    }
    CHECK(rel(disk_mass(1.5), 1.078705202376759) < 1e-14);
}

TEST_CASE("annulus closed forms match reference values") {
    for (const auto& a : kAnnulus) {
        CHECK(rel(annulus_inner(a.beta), a.inner) < 1e-9);
        CHECK(rel(annulus_outer(a.beta, 1.5), a.outer15) < 1e-9);
        CHECK(rel(annulus_outer(a.beta, 2.0), a.outer2) < 1e-9);
        CHECK(rel(annulus_outer(a.beta, 4.0), a.outer4) < 1e-9);
    }
}

TEST_CASE("annulus_inner is positive in both families") {
    for (double beta = 1.01; beta < 2.0; beta += 0.01) {
        CHECK(annulus_inner(beta) > 0.0);
        CHECK(annulus_inner(beta, CoefficientFamily::half_parameter) > 0.0);
    }
    CHECK(std::fabs(annulus_inner(1.5, CoefficientFamily::half_parameter) - 2.0 * pi * (2.0 - a_beta(1.5))) <
          1e-13);
}

TEST_CASE("annulus_outer limits") {
    SeriesControl c;
    c.abs_tol = 1e-10;
    CHECK(std::fabs(annulus_outer(1.5, 1.0, c)) < 1e-7);
    CHECK(std::fabs(annulus_outer(1.5, 1.0, c, CoefficientFamily::half_parameter)) < 1e-7);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(annulus_outer(1.5, inf, c, CoefficientFamily::half_parameter) ==
          doctest::Approx(2.0 * pi * (a_beta(1.5) - 1.0) / 0.5).epsilon(1e-14));
    CHECK(annulus_outer(1.5, 1e6, c, CoefficientFamily::half_parameter) ==
          doctest::Approx(2.0 * pi * (a_beta(1.5) - 1.0) / 0.5).epsilon(1e-6));
    // Whole-plane integral of K vanishes.
    CHECK(std::fabs(annulus_inner(1.5) + annulus_outer(1.5, 1e8)) < 1e-6);
}

TEST_CASE("leading term identity with the half-parameter family") {
    BoundContext ctx;
    ctx.beta = 1.5;
    ctx.L = 2.0;
    ctx.C_beta_norm = 0.7;
    ctx.theta0_inf = 1.3;
    for (double beta : {1.2, 1.5, 1.8})
        for (double L : {1.5, 2.0, 4.0}) {
            ctx.beta = beta;
            ctx.L = L;
            const double tau = 0.05;
            const double sum = annulus_inner(beta, CoefficientFamily::half_parameter) +
                               annulus_outer(beta, L, {}, CoefficientFamily::half_parameter);
            const double expect = ctx.C_beta_norm * std::pow(tau, 2.0 - beta) * ctx.theta0_inf * std::fabs(sum);
            CHECK(rel(i1_closed(ctx, tau), expect) < 1e-6);
        }
}

TEST_CASE("i1_closed") {
    BoundContext ctx;
    ctx.beta = 1.5;
    ctx.L = 2.0;
    ctx.C_beta_norm = 1.0;
    ctx.theta0_inf = 1.0;
    CHECK(rel(i1_closed(ctx, 0.1), 1.70528250141431902) < 1e-10);
    CHECK(rel(i1_closed(ctx, 0.4), std::pow(4.0, 0.5) * i1_closed(ctx, 0.1)) < 1e-14);
    ctx.theta0_inf = 0.0;
    CHECK(i1_closed(ctx, 0.1) == 0.0);
}

TEST_CASE("farfield_i4_bound") {
    BoundContext ctx;
    ctx.beta = 1.5;
    ctx.L = 4.0;
    ctx.C_beta_norm = 1.0;
    ctx.theta0_inf = 1.0;
    CHECK(rel(farfield_i4_bound(ctx, 0.1, 1.0), 0.434638236628579441) < 1e-14);
    const double at4 = farfield_i4_bound(ctx, 0.1, 1.0);
    ctx.L = 8.0;
    CHECK(farfield_i4_bound(ctx, 0.1, 1.0) < at4);
    ctx.L = 1e12;
    CHECK(farfield_i4_bound(ctx, 0.1, 1.0) < 1e-15);
}

TEST_CASE("far-field kernel mass is dominated by the far-field bound") {
    // |integral of K over L < |z| < R| stays below the beta pi L^-beta + 2 pi K L^-beta envelope.
    BoundContext ctx;
    ctx.beta = 1.5;
    ctx.L = 4.0;
    ctx.C_beta_norm = 1.0;
    ctx.theta0_inf = 1.0;
    for (double R : {8.0, 16.0, 32.0}) {
        KernelSpec s{1.5, {1.0, 0.0}, 4.0, R};
        const double v = std::fabs(quad_kernel_annulus(s).value);
        CHECK(v <= farfield_i4_bound(ctx, 1.0, 1.0));
    }
}

TEST_CASE("quad_kernel_annulus matches the closed forms") {
    QuadControl q;
    q.abs_tol = 1e-9;
    for (const auto& a : kAnnulus) {
        KernelSpec inner{a.beta, {1.0, 0.0}, 0.0, 1.0};
        const QuadResult ri = quad_kernel_annulus(inner, q);
        CHECK(ri.err_est <= q.abs_tol);
        CHECK(std::fabs(ri.value - a.inner) <= 1e-7 * (1.0 + std::fabs(a.inner)));
        const double Ls[] = {1.5, 2.0, 4.0};
        const double outs[] = {a.outer15, a.outer2, a.outer4};
        for (int i = 0; i < 3; ++i) {
            KernelSpec disk{a.beta, {1.0, 0.0}, 0.0, Ls[i]};
            const double v = quad_kernel_annulus(disk, q).value;
            const double closed = annulus_inner(a.beta) + annulus_outer(a.beta, Ls[i]);
            CHECK(std::fabs(v - closed) <= 1e-5 * (1.0 + std::fabs(v)));
            KernelSpec ring{a.beta, {1.0, 0.0}, 1.0, Ls[i]};
            CHECK(std::fabs(quad_kernel_annulus(ring, q).value - outs[i]) <= 1e-7 * (1.0 + std::fabs(outs[i])));
        }
    }
}

TEST_CASE("quad_kernel_annulus rotation invariance and tolerance failure") {
    KernelSpec a{1.5, {1.0, 0.0}, 0.3, 2.5};
    KernelSpec b{1.5, {0.0, 1.0}, 0.3, 2.5};
    CHECK(std::fabs(quad_kernel_annulus(a).value - quad_kernel_annulus(b).value) <= 1e-10);
    QuadControl tiny;
    tiny.abs_tol = 1e-15;
    tiny.max_subdivisions = 3;
    CHECK_THROWS_AS(quad_kernel_annulus(a, tiny), AccuracyError);
    try {
        quad_kernel_annulus(a, tiny);
    } catch (const AccuracyError& e) {
        CHECK(std::fabs(e.estimate() - quad_kernel_annulus(a).value) < 1e-3);
    }
}

TEST_CASE("quad_kernel_annulus on a far annulus agrees with a refined midpoint rule") {
    const double beta = 1.5;
    KernelSpec s{beta, {1.0, 0.0}, 10.0, 20.0};
    const double v = quad_kernel_annulus(s).value;
    // Polar midpoint rule about the origin; the integrand is smooth there.
    auto midpoint = [&](int nr, int nt) {
        double acc = 0.0;
        const double dr = 10.0 / nr, dt = 2.0 * pi / nt;
        for (int i = 0; i < nr; ++i) {
            const double r = 10.0 + (i + 0.5) * dr;
            for (int j = 0; j < nt; ++j) {
                const double t = (j + 0.5) * dt;
                acc += kernel_diff({r * std::cos(t), r * std::sin(t)}, s) * r;
            }
        }
        return acc * dr * dt;
    };
    const double m1 = midpoint(200, 256), m2 = midpoint(400, 256);
    const double richardson = (4.0 * m2 - m1) / 3.0;
    CHECK(std::fabs(v - richardson) < 1e-8);
    CHECK(std::fabs(v) < 0.1);
}

TEST_CASE("quad_kernel_annulus agrees with Boost nested quadrature away from the singular points") {
    // Annulus 1.5 < |z| < 3 contains v only through |z - v| >= 0.5: smooth integrand.
    const double beta = 1.3;
    KernelSpec s{beta, {1.0, 0.0}, 1.5, 3.0};
    auto inner = [&](double r) {
        auto g = [&](double t) { return kernel_diff({r * std::cos(t), r * std::sin(t)}, s) * r; };
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 2.0 * pi, 15, 1e-13);
    };
    const double oracle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inner, 1.5, 3.0, 15, 1e-12);
    CHECK(std::fabs(quad_kernel_annulus(s).value - oracle) < 1e-9);
}
