#include "doctest.h"

#include "gsqg/angle.hpp"
#include "gsqg/bounds.hpp"
#include "gsqg/config.hpp"
#include "gsqg/context.hpp"
#include "gsqg/contour.hpp"
#include "gsqg/csv.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/sim.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

using namespace gsqg;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

double l2(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s) * f.spacing();
}

double sup(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s = std::max(s, std::fabs(v));
    return s;
}

ScalarField mode_field(int n, double L, int k1, int k2, double amp = 1.0) {
    ScalarField f(n, L);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f.at(i, j) = amp * std::cos(2.0 * pi * (k1 * f.coord(i) + k2 * f.coord(j)) / L);
    return f;
}

SimConfig saddle_config(int n, double beta = 1.5) {
    SimConfig c;
    c.beta = beta;
    c.n = n;
    c.t_end = 1.0;
    return c;
}

}  // namespace

TEST_CASE("initial saddle data") {
    SimConfig c = saddle_config(64);
    const ScalarField f = make_initial_field(c);
    CHECK(f.at(32, 32) == doctest::Approx(profile_value(c, 0.0)).epsilon(1e-15));
    CHECK(f.at(32, 32) == doctest::Approx(c.offset));
    CHECK(f.at(0, 0) == 0.0);
    CHECK(smooth_cutoff(0.0, 2.0) == 1.0);
    CHECK(smooth_cutoff(1.5, 2.0) > 0.0);
    CHECK(smooth_cutoff(1.5, 2.0) < 1.0);
    CHECK(smooth_cutoff(2.0, 2.0) == 0.0);
    c.cutoff_radius = pi;
    CHECK_THROWS_AS(make_initial_field(c), ConfigError);
}

TEST_CASE("riesz multiplier on single modes") {
    for (double beta : {1.2, 1.5, 1.8}) {
        const ScalarField t1 = mode_field(64, 2.0 * pi, 1, 0);
        CHECK(max_abs_diff(riesz_stream(t1, beta).values, t1.values) < 1e-13);
        const ScalarField t2 = mode_field(64, 2.0 * pi, 2, 0);
        const ScalarField p2 = riesz_stream(t2, beta);
        const double m = std::pow(2.0, beta - 2.0);
        for (std::size_t k = 0; k < t2.values.size(); ++k) CHECK(std::fabs(p2.values[k] - m * t2.values[k]) < 1e-13);
    }
}

TEST_CASE("multiplier round trip") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    Spectral sp(64, 2.0 * pi);
    std::vector<double> x(64 * 64);
    for (auto& v : x) v = nd(rng);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    for (auto& v : x) v -= mean;
    const auto back = sp.inverse(sp.apply_power(sp.apply_power(sp.forward(x), 2.0 - 1.6), 1.6 - 2.0));
    CHECK(max_abs_diff(back, x) < 1e-10);
}

TEST_CASE("velocity of a single mode and of zero") {
    const ScalarField t = mode_field(64, 2.0 * pi, 1, 0);
    const VelocityField u = velocity(t, 1.7);
    double e1 = 0.0, e2 = 0.0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            e1 = std::max(e1, std::fabs(u.u1[i * 64 + j]));
            e2 = std::max(e2, std::fabs(u.u2[i * 64 + j] - std::sin(t.coord(i))));
        }
    CHECK(e1 < 1e-14);
    CHECK(e2 < 1e-13);
    const VelocityField z = velocity(ScalarField(32, 2.0 * pi), 1.5);
    CHECK(max_speed(z) == 0.0);
}

TEST_CASE("velocity is divergence free") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    ScalarField f(128, 2.0 * pi);
    // Random smooth field: random amplitudes on |m| <= 12.
    for (int a = -12; a <= 12; ++a)
        for (int b = 0; b <= 12; ++b) {
            const double c = nd(rng), s = nd(rng);
            for (int i = 0; i < f.n; ++i)
                for (int j = 0; j < f.n; ++j) {
                    const double ph = a * f.coord(i) + b * f.coord(j);
                    f.at(i, j) += c * std::cos(ph) + s * std::sin(ph);
                }
        }
    Spectral sp(128, 2.0 * pi);
    CHECK(relative_divergence(velocity(f, 1.5, sp), sp) < 1e-10);
    CHECK(relative_divergence(velocity(make_initial_field(saddle_config(128)), 1.3, sp), sp) < 1e-10);
}

TEST_CASE("riesz normalization against a gaussian") {
    // psi = |k|^(beta-2) theta_hat for theta = exp(-|x|^2 / (2 s^2)); whole-plane values
    // psi(r) = s^2 int_0^inf k^(beta-1) exp(-s^2 k^2 / 2) J0(k r) dk.
    const double beta = 1.5, s = 1.0, L = 40.0;
    const int n = 256;
    ScalarField f(n, L);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f.at(i, j) = std::exp(-(f.coord(i) * f.coord(i) + f.coord(j) * f.coord(j)) / (2 * s * s));
    const ScalarField psi = riesz_stream(f, beta);
    auto plane = [&](double r) {
        auto g = [&](double k) { return std::pow(k, beta - 1.0) * std::exp(-0.5 * s * s * k * k) * boost::math::cyl_bessel_j(0, k * r); };
        return s * s * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 40.0 / s, 15, 1e-14);
    };
    const double closed0 = riesz_constant(beta) * pi * std::pow(2 * s * s, 1.0 - 0.5 * beta) * std::tgamma(1.0 - 0.5 * beta);
    CHECK(plane(0.0) == doctest::Approx(closed0).epsilon(1e-10));
    const double h = f.spacing();
    for (int off : {8, 16, 24}) {
        const double r = off * h;
        const double grid = psi.at(n / 2, n / 2) - psi.at(n / 2 + off, n / 2);
        const double want = closed0 - plane(r);
        CHECK(std::fabs(grid - want) / want < 1e-3);
    }
}

TEST_CASE("steady single mode over 100 steps") {
    SimConfig c;
    c.beta = 1.5;
    c.n = 64;
    c.initial_data = InitialKind::single_mode;
    c.t_end = 100 * 0.01;
    c.dt = 0.01;
    Solver s(c);
    const ScalarField f0 = s.field();
    for (int k = 0; k < 100; ++k) s.step();
    CHECK(s.steps_taken() == 100);
    CHECK(max_abs_diff(s.field().values, f0.values) <= 1e-10);
    CHECK(max_abs_diff(f0.values, make_initial_field(c).values) < 1e-13);
}

TEST_CASE("conservation over a unit run at n = 256") {
    const SimConfig c = saddle_config(256);
    Solver s(c);
    const ScalarField f0 = s.field();
    Spectral sp(256, c.box_length);
    double worst_div = 0.0;
    while (s.steps_taken() < s.total_steps()) {
        s.step();
        const ScalarField f = s.field();
        CHECK(std::fabs(l2(f) - l2(f0)) / l2(f0) <= 1e-6);
        CHECK((sup(f) - sup(f0)) / sup(f0) <= 1e-4);
        if (s.steps_taken() % 8 == 0) worst_div = std::max(worst_div, relative_divergence(velocity(f, c.beta, sp), sp));
    }
    CHECK(s.time() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(worst_div < 1e-10);
    double mean0 = 0.0, mean1 = 0.0;
    const ScalarField f1 = s.field();
    for (std::size_t k = 0; k < f0.values.size(); ++k) {
        mean0 += f0.values[k];
        mean1 += f1.values[k];
    }
    CHECK(std::fabs(mean1 - mean0) / f0.values.size() < 1e-13);
}

TEST_CASE("spectral convergence against a 512 reference") {
    SimConfig c = saddle_config(512, 1.5);
    c.t_end = 0.5;
    c.width = 0.5;
    c.dt = 0.005;
    auto run_to = [&](int n) {
        SimConfig cc = c;
        cc.n = n;
        Solver s(cc);
        while (s.steps_taken() < s.total_steps()) s.step();
        return s.field();
    };
    const ScalarField ref = run_to(512), a = run_to(128), b = run_to(256);
    double ea = 0.0, eb = 0.0;
    for (int i = 0; i < 128; ++i)
        for (int j = 0; j < 128; ++j) {
            ea = std::max(ea, std::fabs(a.at(i, j) - ref.at(4 * i, 4 * j)));
            eb = std::max(eb, std::fabs(b.at(2 * i, 2 * j) - ref.at(4 * i, 4 * j)));
        }
    MESSAGE("error n=128: " << ea << ", n=256: " << eb);
    CHECK(ea >= 10.0 * eb);
}

TEST_CASE("cfl violation suggests a step") {
    SimConfig c = saddle_config(64);
    c.dt = 1.0;
    Solver s(c);
    try {
        s.step();
        FAIL("expected CflViolation");
    } catch (const CflViolation& e) {
        CHECK(e.cfl() > c.cfl_max);
        CHECK(e.suggested_dt() < 1.0);
        SimConfig ok = c;
        ok.dt = e.suggested_dt();
        Solver s2(ok);
        CHECK_NOTHROW(s2.step());
    }
    CHECK(s.steps_taken() == 0);
}

TEST_CASE("free step matches the solver") {
    SimConfig c = saddle_config(64);
    c.dt = 0.01;
    const ScalarField f0 = make_initial_field(c);
    ScalarField g = step(f0, c);
    CHECK(g.time == doctest::Approx(0.01));
    SimConfig c1 = c;
    c1.t_end = 0.01;
    Solver s(c1);
    s.step();
    CHECK(max_abs_diff(g.values, s.field().values) < 1e-15);
}

TEST_CASE("holder seminorm estimator") {
    ScalarField flat(64, 2.0 * pi);
    for (auto& v : flat.values) v = 3.0;
    CHECK(holder_seminorm_grid(flat, 0.5) == 0.0);
    const ScalarField c = mode_field(64, 2.0 * pi, 1, 0);
    CHECK(holder_seminorm_grid(c, 0.5) >= 2.0 / std::sqrt(pi));
    // Exact for a linear ramp sampled along the axes at sigma = 1 away from the wrap.
    CHECK(holder_seminorm_grid(c, 1.0) <= 1.0 + 1e-12);
    CHECK(holder_seminorm_grid(c, 1.0) >= 0.99);
}

TEST_CASE("constant field diagnostics") {
    SimConfig cfg = saddle_config(64);
    ScalarField flat(64, cfg.box_length);
    for (auto& v : flat.values) v = 2.0;
    Spectral sp(64, cfg.box_length);
    const DiagRecord r = diagnostics(flat, cfg, sp);
    CHECK(r.holder_seminorm == 0.0);
    CHECK(!r.level_distance);
    CHECK(!r.opening_angle);
    CHECK(r.sup_velocity == 0.0);
    CHECK(r.sup_grad < 1e-13);
}

TEST_CASE("marching squares on a circle") {
    ScalarField f(128, 2.0 * pi);
    for (int i = 0; i < 128; ++i)
        for (int j = 0; j < 128; ++j) f.at(i, j) = std::hypot(f.coord(i), f.coord(j));
    const auto lines = marching_squares(f, 1.0);
    REQUIRE(lines.size() == 1);
    const auto& l = lines[0];
    CHECK(std::hypot(l.front().x - l.back().x, l.front().y - l.back().y) == 0.0);
    double worst = 0.0;
    for (const auto& p : l) worst = std::max(worst, std::fabs(std::hypot(p.x, p.y) - 1.0));
    CHECK(worst < f.spacing() * f.spacing());
    const auto outer = marching_squares(f, 2.0);
    CHECK(*polyline_distance(lines, outer) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(marching_squares(f, 100.0).empty());
}

TEST_CASE("conic fit recovers exact conics") {
    std::vector<Point> hyp, ell;
    for (int k = -20; k <= 20; ++k) {
        const double t = 0.1 * k;
        // x^2/4 - y^2 = 1 and its rotation by 0.3.
        const double x = 2.0 * std::cosh(t), y = std::sinh(t), c = std::cos(0.3), s = std::sin(0.3);
        hyp.push_back({c * x - s * y, s * x + c * y});
        hyp.push_back({-(c * x - s * y), -(s * x + c * y)});
        ell.push_back({3.0 * std::cos(0.15 * k), std::sin(0.15 * k)});
    }
    const auto h = fit_conic(hyp);
    REQUIRE(h);
    CHECK(*hyperbola_opening_angle(*h) == doctest::Approx(2.0 * std::atan(0.5)).epsilon(1e-10));
    CHECK(!ellipse_eccentricity(*h));
    const auto e = fit_conic(ell);
    REQUIRE(e);
    CHECK(*ellipse_eccentricity(*e) == doctest::Approx(std::sqrt(1.0 - 1.0 / 9.0)).epsilon(1e-10));
    CHECK(!hyperbola_opening_angle(*e));
    CHECK(!fit_conic({{1, 0}, {0, 1}}));
}

TEST_CASE("opening angle of saddle data at n = 512") {
    const SimConfig c = saddle_config(512, 1.8);
    const ScalarField f = make_initial_field(c);
    const auto ang = contour_opening_angle(f, f.at(256, 256) * (1.0 - c.contour_eps), c.effective_fit_radius());
    REQUIRE(ang);
    const double want = saddle_angle(c.alpha0, c.delta0).gamma_exact;
    MESSAGE("contour angle " << *ang << ", saddle_angle " << want);
    CHECK(std::fabs(*ang - want) / want < 0.05);
}

TEST_CASE("elliptic eccentricity") {
    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{3.0, 1.0}, std::pair{1.0, 1.5}}) {
        SimConfig c = saddle_config(256);
        c.initial_data = InitialKind::elliptic;
        c.a0 = a;
        c.b0 = b;
        c.offset = 0.0;
        const ScalarField f = make_initial_field(c);
        const auto e = contour_eccentricity(f, profile_value(c, 0.3), c.effective_fit_radius());
        REQUIRE(e);
        const double want = std::sqrt(1.0 - std::min(a, b) / std::max(a, b));
        CHECK(std::fabs(*e - want) / want < 0.05);
    }
}

TEST_CASE("level distance respects the holder bound along a saddle run") {
    SimConfig c = saddle_config(256, 1.5);
    c.diag_every = 8;
    int rows = 0;
    double last_integral = -1.0;
    run(c, [&](const DiagRecord& r) {
        ++rows;
        REQUIRE(r.level_distance);
        const double slack = 2.0 * c.box_length / c.n;
        const double bound =
            holder_distance_bound(c.level_values.first, c.level_values.second, r.holder_seminorm, c.sigma);
        CHECK(*r.level_distance >= bound - slack);
        CHECK(r.holder_time_integral >= last_integral);
        last_integral = r.holder_time_integral;
        CHECK(r.opening_angle);
    });
    CHECK(rows > 2);
}

TEST_CASE("run with t_end = 0 emits the initial record only") {
    SimConfig c = saddle_config(64);
    c.t_end = 0.0;
    std::vector<DiagRecord> recs;
    const ScalarField f = run(c, [&](const DiagRecord& r) { recs.push_back(r); });
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].time == 0.0);
    CHECK(recs[0].holder_time_integral == 0.0);
    CHECK(f.time == 0.0);
}

TEST_CASE("run is deterministic") {
    SimConfig c = saddle_config(64);
    c.t_end = 0.3;
    std::ostringstream a, b;
    run(c, [&](const DiagRecord& r) { write_diag_row(a, r); });
    run(c, [&](const DiagRecord& r) { write_diag_row(b, r); });
    CHECK(a.str() == b.str());
}

TEST_CASE("stream differences stay below the upper bound") {
    const double beta = 1.5;
    const SimConfig c = saddle_config(256, beta);
    const ScalarField f = make_initial_field(c);
    const ScalarField psi = riesz_stream(f, beta);
    const FieldNorms norms{sup(f), l2(f)};
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> node(0, c.n - 1), off(-7, 7);
    const double h = f.spacing();
    int pairs = 0;
    double worst = 0.0;
    while (pairs < 100) {
        const int i = node(rng), j = node(rng), a = off(rng), b = off(rng);
        if (a == 0 && b == 0) continue;
        const double tau = h * std::hypot(a, b);
        const double diff = std::fabs(psi.at(i, j) - psi.wrapped(i + a, j + b));
        const double ub = stream_upper_bound(beta, tau, norms, 2.0, riesz_constant(beta));
        CHECK(diff <= ub);
        worst = std::max(worst, diff / ub);
        ++pairs;
    }
    MESSAGE("largest measured / bound ratio " << worst);
}

TEST_CASE("velocity stays below the calibrated sup bound") {
    const double beta = 1.5, lambda = 0.75;
    SimConfig c = saddle_config(128, beta);
    c.t_end = 0.5;
    Solver s(c);
    const double C = 2.0 * pi * beta * riesz_constant(beta);
    Spectral sp(c.n, c.box_length);
    while (true) {
        const ScalarField f = s.field();
        const double u = max_speed(velocity(f, beta, sp));
        const double bound = velocity_sup_bound(beta, lambda, holder_seminorm_grid(f, lambda), sup(f), 1e-12, 1.0, C);
        CHECK(u <= bound);
        if (s.steps_taken() == s.total_steps()) break;
        for (int k = 0; k < 5 && s.steps_taken() < s.total_steps(); ++k) s.step();
    }
}

TEST_CASE("config round trip and errors") {
    const std::string text =
        "# saddle\nbeta = 1.7\nn = 128\nt_end = 0.25\ninitial_data = saddle\nlevel_values = 0.8, 1.2\n"
        "alpha0 = 0.2  # opening\nprofile = linear\n";
    const SimConfig c = parse_config_string(text);
    CHECK(c.beta == 1.7);
    CHECK(c.n == 128);
    CHECK(c.level_values.second == 1.2);
    CHECK(c.alpha0 == 0.2);
    CHECK(c.profile == Profile::linear);
    const SimConfig d = parse_config_string(dump_config(c));
    CHECK(dump_config(d) == dump_config(c));
    SimConfig odd = c;
    odd.box_length = 0.1 + 0.2 + 6.0;
    odd.cutoff_radius = 1.0 / 3.0;
    CHECK(parse_config_string(dump_config(odd)).box_length == odd.box_length);
    CHECK(parse_config_string(dump_config(odd)).cutoff_radius == odd.cutoff_radius);

    auto key_of = [](const std::string& t) -> std::pair<std::string, int> {
        try {
            parse_config_string(t);
        } catch (const ConfigError& e) {
            return {e.key(), e.line()};
        }
        return {"", -1};
    };
    CHECK(key_of("n = 64\nt_end = 1\ninitial_data = saddle\n").first == "beta");
    CHECK(key_of("beta = 1.5\nn = 64\nt_end = 1\ninitial_data = saddle\ncolour = red\n") == std::pair<std::string, int>{"colour", 5});
    CHECK(key_of("beta = 1.5\nn = sixty\nt_end = 1\ninitial_data = saddle\n") == std::pair<std::string, int>{"n", 2});
    CHECK(key_of("beta = 2.5\nn = 64\nt_end = 1\ninitial_data = saddle\n").first == "beta");
    CHECK(key_of("beta = 1.5\nn = 64\nt_end = 1\ninitial_data = spiral\n") == std::pair<std::string, int>{"initial_data", 4});
    CHECK(key_of("beta = 1.5\nbeta = 1.6\nn = 64\nt_end = 1\ninitial_data = saddle\n") == std::pair<std::string, int>{"beta", 2});
    CHECK(key_of("beta = 1.5\nn = 64\nt_end = 1\ninitial_data = saddle\ncutoff_radius = 4\n").first == "cutoff_radius");
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("csv row and snapshot round trip") {
    DiagRecord r;
    r.time = 0.5;
    r.sup_theta = 2.0;
    r.opening_angle = 0.25;
    std::ostringstream os;
    write_diag_row(os, r);
    const auto cells = split_csv_line(os.str().substr(0, os.str().size() - 1));
    REQUIRE(cells.size() == 10);
    CHECK(split_csv_line(kDiagHeader).size() == 10);
    CHECK(cells[0] == "0.5");
    CHECK(cells[6] == "0.25");
    CHECK(cells[7].empty());

    ScalarField f = mode_field(16, 2.0 * pi, 1, 2, 0.3);
    f.values[5] = -1.0 / 3.0;
    const std::string path = "snapshot_test.bin";
    write_snapshot(path, f);
    const ScalarField g = read_snapshot(path, 2.0 * pi);
    CHECK(g.n == 16);
    CHECK(g.values == f.values);
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    REQUIRE(fp);
    unsigned char head[12];
    REQUIRE(std::fread(head, 1, 12, fp) == 12);
    std::fclose(fp);
    CHECK(head[0] == 16);
    CHECK(head[1] == 0);
    CHECK(head[4] == 0);
    std::remove(path.c_str());
}
