#include "commands.hpp"

#include "plot.hpp"

#include "gsqg/angle.hpp"
#include "gsqg/bounds.hpp"
#include "gsqg/config.hpp"
#include "gsqg/context.hpp"
#include "gsqg/csv.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/kernel.hpp"
#include "gsqg/sim.hpp"
#include "gsqg/specfun.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace gsqg::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Runs f(0..n-1) on a small worker pool; results keep their index.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
    std::vector<T> out(n);
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.push_back(std::async(std::launch::async, [&] {
            for (std::size_t k = next++; k < n; k = next++) out[k] = f(k);
        }));
    for (auto& p : pool) p.get();
    return out;
}

std::string cell(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

// Writes to the file named by path, or to fallback when path is empty or "-".
void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'", "out");
    f << text;
}

double c_beta_for(const std::string& mode, double beta) {
    if (mode == "riesz") return normalization_constant(beta, Normalization::riesz);
    if (mode == "unit") return normalization_constant(beta, Normalization::unit);
    throw ConfigError("normalization must be riesz or unit, got '" + mode + "'", "normalization");
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    std::optional<double> beta, L, r;
    bool include_printed = false;
    double perturb_a = 0.0;
    int samples = 0;
    unsigned long long seed = 1;
    std::string out;
};

struct VerifyJob {
    int order = 0;
    std::string identity;
    double beta = 0.0;
    double L = nan;
    double tol = 0.0;
    bool relative = false;
    std::function<double()> closed, oracle;
};

struct VerifyRow {
    int order = 0;
    std::string identity;
    double beta = 0.0, L = nan, closed = nan, oracle = nan, diff = nan;
    bool pass = false;
    std::string note;
};

std::vector<VerifyJob> verify_jobs(const VerifyOptions& o) {
    std::vector<double> betas9, betas3{1.2, 1.5, 1.8}, radii{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.5, 2.0, 5.0},
        lengths{1.5, 2.0, 4.0};
    for (int k = 1; k <= 9; ++k) betas9.push_back(1.0 + 0.1 * k);
    if (o.beta) betas9 = betas3 = {*o.beta};
    if (o.r) radii = {*o.r};
    if (o.L) lengths = {*o.L};
    const double pa = 1.0 + o.perturb_a;
    std::vector<VerifyJob> jobs;
    for (double b : betas9) {
        jobs.push_back({0, "series_A", b, nan, 1e-8, false, [=] { return a_beta(b) * pa; },
                        [=] { return series_A(b).value; }});
        jobs.push_back({1, "series_soma", b, nan, 1e-6, false, [=] { return a_beta(b) * pa / (b - 2.0); },
                        [=] { return series_soma(b).value; }});
    }
    auto annulus_oracle = [](double b, double r_in, double r_out) {
        KernelSpec s;
        s.beta = b;
        s.r_in = r_in;
        s.r_out = r_out;
        return quad_kernel_annulus(s).value;
    };
    std::vector<CoefficientFamily> families{CoefficientFamily::exact};
    if (o.include_printed) families.push_back(CoefficientFamily::half_parameter);
    for (auto fam : families) {
        const std::string suffix = fam == CoefficientFamily::exact ? "" : "_printed";
        const int shift = fam == CoefficientFamily::exact ? 0 : 3;
        for (double b : betas3) {
            for (double r : radii)
                jobs.push_back({2 + shift, "angular_integral" + suffix, b, r, 1e-8, false,
                                [=] { return angular_integral(r, b, fam); },
                                [=] { return angular_integral_trapezoid(r, b); }});
            jobs.push_back({3 + shift, "annulus_inner" + suffix, b, nan, 1e-5, true,
                            [=] { return annulus_inner(b, fam); }, [=] { return annulus_oracle(b, 0.0, 1.0); }});
            for (double L : lengths)
                jobs.push_back({4 + shift, "annulus_outer" + suffix, b, L, 1e-5, true,
                                [=] { return annulus_outer(b, L, {}, fam); },
                                [=] { return annulus_oracle(b, 1.0, L); }});
        }
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ub(1.05, 1.95), ur(0.05, 4.0);
    for (int k = 0; k < o.samples; ++k) {
        const double b = ub(rng);
        double r = ur(rng);
        if (std::fabs(r - 1.0) < 0.05) r += 0.1;
        jobs.push_back({2, "angular_integral", b, r, 1e-8, false, [=] { return angular_integral(r, b); },
                        [=] { return angular_integral_trapezoid(r, b); }});
    }
    return jobs;
}

VerifyRow run_verify_job(const VerifyJob& j) {
    VerifyRow row;
    row.order = j.order;
    row.identity = j.identity;
    row.beta = j.beta;
    row.L = j.L;
    try {
        row.closed = j.closed();
        row.oracle = j.oracle();
    } catch (const AccuracyError& e) {
        row.oracle = e.estimate();
        row.note = e.what();
    } catch (const std::exception& e) {
        row.note = e.what();
    }
    row.diff = std::fabs(row.closed - row.oracle);
    const double scale = j.relative ? std::fabs(row.oracle) : 1.0;
    row.pass = row.note.empty() && row.diff <= j.tol * scale;
    return row;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    const auto jobs = verify_jobs(o);
    auto rows = parallel_map<VerifyRow>(jobs.size(), [&](std::size_t k) { return run_verify_job(jobs[k]); });
    std::sort(rows.begin(), rows.end(), [](const VerifyRow& a, const VerifyRow& b) {
        const double la = std::isnan(a.L) ? -1.0 : a.L, lb = std::isnan(b.L) ? -1.0 : b.L;
        return std::tie(a.order, a.beta, la) < std::tie(b.order, b.beta, lb);
    });
    std::ostringstream csv;
    csv << "identity,beta,L,closed_form,oracle,abs_diff,pass\n";
    int failed = 0;
    for (const auto& r : rows) {
        csv << r.identity << ',' << cell(r.beta) << ',' << cell(r.L) << ',' << cell(r.closed) << ',' << cell(r.oracle)
            << ',' << cell(r.diff) << ',' << (r.pass ? "true" : "false") << '\n';
        if (!r.pass) {
            ++failed;
            if (!r.note.empty()) err << "verify: " << r.identity << " beta=" << r.beta << ": " << r.note << '\n';
        }
    }
    emit(o.out, out, csv.str());
    err << "verify: " << rows.size() - failed << "/" << rows.size() << " rows pass" << (failed ? ", FAILED" : "") << '\n';
    return failed ? kAssertionFailed : kOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsOptions {
    std::vector<double> beta{1.5}, sigma{0.25};
    double K = 1.5, N_sigma = 1.0, theta0 = 1.0;
    std::optional<double> L, tau, p1;
    double sup_norm = 1.0, l2_norm = 1.0, L_cut = 2.0;
    std::string normalization = "riesz";
    std::string out;
};

struct BoundsRow {
    double beta = 0, sigma = 0, K = 0, L_threshold = 0, L = 0, A = 0, C = 0, D = 0, r = 0, tau = 0;
    double lower = nan, upper = nan, i2 = nan, i3 = nan, i4 = nan;
    std::string error;
};

BoundsRow bounds_row(const BoundsOptions& o, double beta, double sigma) {
    BoundsRow row;
    row.beta = beta;
    row.sigma = sigma;
    row.K = o.K;
    try {
        BoundContext ctx;
        ctx.beta = beta;
        ctx.sigma = sigma;
        ctx.K_const = o.K;
        ctx.N_sigma = o.N_sigma;
        ctx.theta0_inf = o.theta0;
        ctx.C_beta_norm = c_beta_for(o.normalization, beta);
        row.L_threshold = admissible_L(beta, o.K);
        ctx.L = o.L ? *o.L : std::max(2.0, row.L_threshold);
        row.L = ctx.L;
        row.A = a_beta(beta);
        row.C = c_beta_L(beta, ctx.L);
        row.D = d_beta_L(beta, ctx.L);
        ctx = with_admissible_radius(ctx);
        row.r = ctx.r;
        row.tau = o.tau ? *o.tau : 2.0 * ctx.r;
        const double p1 = o.p1 ? *o.p1 : ctx.r;
        row.lower = stream_lower_bound(ctx, row.tau);
        if (row.tau < 0.5) row.upper = stream_upper_bound(beta, row.tau, {o.sup_norm, o.l2_norm}, o.L_cut, ctx.C_beta_norm);
        row.i2 = remainder_i2_bound(ctx, row.tau, p1);
        if (sigma < beta - 1.0) row.i3 = remainder_i3_bound(ctx, row.tau, p1);
        row.i4 = farfield_i4_bound(ctx, row.tau, o.K);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

int cmd_bounds(const BoundsOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::pair<double, double>> grid;
    for (double b : o.beta)
        for (double s : o.sigma) grid.emplace_back(b, s);
    std::sort(grid.begin(), grid.end());
    const auto rows = parallel_map<BoundsRow>(grid.size(), [&](std::size_t k) { return bounds_row(o, grid[k].first, grid[k].second); });
    for (const auto& r : rows)
        if (!r.error.empty()) throw PreconditionError("beta=" + format_double(r.beta) + " sigma=" + format_double(r.sigma) + ": " + r.error);
    std::ostringstream csv;
    csv << "beta,sigma,K_const,L_threshold,L,A_beta,C_betaL,D_betaL,r_admissible,tau,lower,upper,i2,i3,i4\n";
    int failed = 0;
    for (const auto& r : rows) {
        csv << cell(r.beta) << ',' << cell(r.sigma) << ',' << cell(r.K) << ',' << cell(r.L_threshold) << ','
            << cell(r.L) << ',' << cell(r.A) << ',' << cell(r.C) << ',' << cell(r.D) << ',' << cell(r.r) << ','
            << cell(r.tau) << ',' << cell(r.lower) << ',' << cell(r.upper) << ',' << cell(r.i2) << ',' << cell(r.i3)
            << ',' << cell(r.i4) << '\n';
        if (std::isfinite(r.upper) && !(r.lower <= r.upper)) ++failed;
    }
    emit(o.out, out, csv.str());
    err << "bounds: " << rows.size() << " rows" << (failed ? ", lower > upper in " + std::to_string(failed) + " rows" : "")
        << '\n';
    return failed ? kAssertionFailed : kOk;
}

// ---------------------------------------------------------------- angle

struct AngleOptions {
    std::string envelope = "upper";
    double beta = 1.5, gamma0 = 0.01;
    std::optional<double> C_tilde;
    double C3 = 0.0, C2 = 1.0, C = 1.0;
    double t_max = 10.0, gamma_floor = 1e-12, rel_tol = 1e-10, abs_tol = 1e-12;
    std::string normalization = "riesz";
    std::string out;
};

int cmd_angle(const AngleOptions& o, std::ostream& out, std::ostream& err) {
    AngleRhs rhs;
    if (o.envelope == "upper")
        rhs = upper_envelope(o.C2, o.beta);
    else if (o.envelope == "lower")
        rhs = lower_envelope(o.C_tilde ? *o.C_tilde : default_c_tilde(o.beta, c_beta_for(o.normalization, o.beta)), o.C3,
                             o.beta);
    else if (o.envelope == "power")
        rhs = power_law_rhs(o.beta, o.C);
    else
        throw ConfigError("envelope must be upper, lower or power, got '" + o.envelope + "'", "envelope");
    StepControl sc;
    sc.rel_tol = o.rel_tol;
    sc.abs_tol = o.abs_tol;
    const AngleTrajectory tr = integrate_angle(rhs, o.gamma0, o.t_max, sc, o.gamma_floor);
    std::ostringstream csv;
    // gamma underflows long before it reaches 0; w = ln(-ln gamma) keeps the trajectory visible.
    csv << "t,gamma,w\n";
    for (const auto& s : tr.samples)
        csv << format_double(s.t) << ',' << format_double(s.gamma) << ',' << format_double(s.w) << '\n';
    if (tr.vanish_time) csv << format_double(*tr.vanish_time) << ",0,\n";
    emit(o.out, out, csv.str());
    err << "angle: " << tr.samples.size() << " samples, " << tr.steps << " steps";
    if (tr.vanish_time)
        err << ", vanish_time " << format_double(*tr.vanish_time) << " in [" << format_double(tr.vanish_lo) << ", "
            << format_double(tr.vanish_hi) << "]";
    else
        err << ", no vanish before t_max, ln(-ln gamma(t_max)) = " << format_double(tr.samples.back().w);
    if (tr.floor_time) err << ", floor_time " << format_double(*tr.floor_time);
    err << '\n';
    return kOk;
}

// ---------------------------------------------------------------- blowup-time

struct BlowupOptions {
    std::vector<double> beta{1.5}, gamma0{0.01}, C{1.0};
    std::string out;
};

int cmd_blowup(const BlowupOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::array<double, 3>> grid;
    for (double b : o.beta)
        for (double g : o.gamma0)
            for (double c : o.C) grid.push_back({b, g, c});
    std::sort(grid.begin(), grid.end());
    const auto res = parallel_map<BlowupTimeRoutes>(grid.size(), [&](std::size_t k) {
        return blowup_time_routes(grid[k][0], grid[k][1], grid[k][2]);
    });
    std::ostringstream csv;
    csv << "beta,gamma0,C,T_star_lower\n";
    int failed = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto& r = res[k];
        csv << format_double(grid[k][0]) << ',' << format_double(grid[k][1]) << ',' << format_double(grid[k][2]) << ','
            << format_double(r.log_substitution) << '\n';
        const double gap = std::fabs(r.log_substitution - r.exponential_integral);
        if (!(gap <= std::max(1e-9 * std::fabs(r.exponential_integral), r.err_est))) {
            ++failed;
            err << "blowup-time: substitutions disagree at beta=" << grid[k][0] << " gamma0=" << grid[k][1]
                << ": " << r.log_substitution << " vs " << r.exponential_integral << '\n';
        }
    }
    emit(o.out, out, csv.str());
    err << "blowup-time: " << grid.size() << " rows" << (failed ? ", FAILED" : "") << '\n';
    return failed ? kAssertionFailed : kOk;
}

// ---------------------------------------------------------------- oracle

struct OracleOptions {
    std::vector<double> beta{1.5};
    double r_in = 0.0;
    std::vector<double> r_out{1.0};
    double v1 = 1.0, v2 = 0.0, abs_tol = 1e-10;
    std::string out;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::pair<double, double>> grid;
    for (double b : o.beta)
        for (double r : o.r_out) grid.emplace_back(b, r);
    std::sort(grid.begin(), grid.end());
    struct Res {
        QuadResult q;
        std::string error;
    };
    const auto res = parallel_map<Res>(grid.size(), [&](std::size_t k) {
        KernelSpec s;
        s.beta = grid[k].first;
        s.v = {o.v1, o.v2};
        s.r_in = o.r_in;
        s.r_out = grid[k].second;
        QuadControl qc;
        qc.abs_tol = o.abs_tol;
        try {
            return Res{quad_kernel_annulus(s, qc), {}};
        } catch (const AccuracyError& e) {
            return Res{{e.estimate(), e.err_est(), 0}, e.what()};
        }
    });
    std::ostringstream csv;
    csv << "beta,r_in,r_out,v1,v2,value,err_est\n";
    int failed = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        csv << format_double(grid[k].first) << ',' << format_double(o.r_in) << ',' << format_double(grid[k].second)
            << ',' << format_double(o.v1) << ',' << format_double(o.v2) << ',' << format_double(res[k].q.value) << ','
            << format_double(res[k].q.err_est) << '\n';
        if (!res[k].error.empty()) {
            ++failed;
            err << "oracle: " << res[k].error << '\n';
        }
    }
    emit(o.out, out, csv.str());
    err << "oracle: " << grid.size() << " rows" << (failed ? ", FAILED" : "") << '\n';
    return failed ? kAssertionFailed : kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::string config;
    std::string out = ".";
    bool plot = false;
    bool dump = false;
    bool snapshot = false;
    std::map<std::string, std::string> overrides;
};

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    std::istringstream in(dump_config(SimConfig{}));
    for (std::string line; std::getline(in, line);) keys.push_back(line.substr(0, line.find(' ')));
    return keys;
}

std::string kebab(std::string s) {
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
    SimConfig cfg = load_config(o.config);
    for (const auto& [k, v] : o.overrides) apply_override(cfg, k, v);
    cfg.validate();
    if (o.dump) {
        out << dump_config(cfg);
        return kOk;
    }
    const std::filesystem::path dir(o.out);
    std::filesystem::create_directories(dir);
    const std::string csv_path = (dir / "diagnostics.csv").string();
    std::ofstream csv(csv_path);
    if (!csv) throw ConfigError("cannot write '" + csv_path + "'", "out");
    csv << kDiagHeader << '\n';
    std::vector<DiagRecord> recs;
    int code = kOk;
    std::optional<ScalarField> final_field;
    try {
        final_field = run(cfg, [&](const DiagRecord& r) {
            write_diag_row(csv, r);
            csv.flush();
            recs.push_back(r);
        });
    } catch (const CflViolation& e) {
        err << "simulate: " << e.what() << '\n';
        code = kAssertionFailed;
    } catch (const NumericalBreakdown& e) {
        err << "simulate: " << e.what() << '\n';
        code = kAssertionFailed;
    }
    if (o.snapshot && final_field) write_snapshot((dir / "final_field.bin").string(), *final_field);
    if (o.plot) {
        std::vector<double> t, ang, holder, dist, grad;
        for (const auto& r : recs) {
            t.push_back(r.time);
            ang.push_back(r.opening_angle.value_or(nan));
            holder.push_back(r.holder_seminorm);
            dist.push_back(r.level_distance.value_or(nan));
            grad.push_back(r.sup_grad);
        }
        write_line_plot_svg((dir / "opening_angle.svg").string(), "opening angle", "t", t, ang);
        write_line_plot_svg((dir / "holder_seminorm.svg").string(), "Hoelder seminorm, sigma = " + format_double(cfg.sigma), "t", t, holder);
        write_line_plot_svg((dir / "level_distance.svg").string(), "distance between level sets", "t", t, dist);
        write_line_plot_svg((dir / "sup_grad.svg").string(), "sup |grad theta|", "t", t, grad);
    }
    err << "simulate: " << recs.size() << " rows to " << csv_path << (code ? ", FAILED" : "") << '\n';
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gSQG saddle-collapse laboratory: identity checks, bounds, angle dynamics and simulation", "gsqg-lab"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "Check closed forms against independent oracles");
    verify->add_option("--beta", vo.beta, "Restrict every beta grid to this value");
    verify->add_option("--L", vo.L, "Restrict the outer annulus radius grid to this value");
    verify->add_option("--r", vo.r, "Restrict the angular-integral radius grid to this value");
    verify->add_flag("--include-printed", vo.include_printed, "Add rows for the printed half-parameter family");
    verify->add_option("--perturb-a", vo.perturb_a, "Test hook: multiply A(beta) by (1 + value)")->group("");
    verify->add_option("--samples", vo.samples, "Extra random angular-integral rows");
    verify->add_option("--seed", vo.seed, "Seed for --samples");
    verify->add_option("--out", vo.out, "CSV path (default stdout)");

    BoundsOptions bo;
    auto* bounds = app.add_subcommand("bounds", "Stream-function bound constants");
    bounds->add_option("--beta", bo.beta, "beta values")->delimiter(',');
    bounds->add_option("--sigma", bo.sigma, "Hoelder exponents")->delimiter(',');
    bounds->add_option("--K,--k-const", bo.K, "Remainder constant K");
    bounds->add_option("--Nsigma,--n-sigma", bo.N_sigma, "sup_t ||theta||_{C^sigma}");
    bounds->add_option("--theta0,--theta0-inf", bo.theta0, "inf_t |theta(0,t)|");
    bounds->add_option("--L", bo.L, "Cut radius L (default max(2, threshold))");
    bounds->add_option("--tau", bo.tau, "Point separation (default 2r)");
    bounds->add_option("--p1,--p1-norm", bo.p1, "|p1| (default r)");
    bounds->add_option("--sup-norm", bo.sup_norm, "||theta||_inf for the upper bound");
    bounds->add_option("--l2-norm", bo.l2_norm, "||theta||_2 for the upper bound");
    bounds->add_option("--L-cut,--l-cut", bo.L_cut, "Far-field radius of the upper bound");
    bounds->add_option("--normalization", bo.normalization, "riesz or unit");
    bounds->add_option("--out", bo.out, "CSV path (default stdout)");

    AngleOptions ao;
    auto* angle = app.add_subcommand("angle", "Integrate an opening-angle envelope");
    angle->add_option("--envelope", ao.envelope, "upper, lower or power");
    angle->add_option("--beta", ao.beta, "beta (upper envelope accepts 1)");
    angle->add_option("--gamma0", ao.gamma0, "Initial angle");
    angle->add_option("--C-tilde,--c-tilde", ao.C_tilde,
                      "Lower envelope constant (default C_beta pi A(beta)(beta-1)/(2-beta), a modeling choice)");
    angle->add_option("--C3,--c3", ao.C3, "Lower envelope linear constant");
    angle->add_option("--C2,--c2", ao.C2, "Upper envelope constant");
    angle->add_option("--C,--c", ao.C, "Power-law constant");
    angle->add_option("--t-max", ao.t_max, "End time");
    angle->add_option("--gamma-floor", ao.gamma_floor, "Floor for floor_time");
    angle->add_option("--rel-tol", ao.rel_tol, "Relative tolerance in ln(-ln gamma)");
    angle->add_option("--abs-tol", ao.abs_tol, "Absolute tolerance in ln(-ln gamma)");
    angle->add_option("--normalization", ao.normalization, "riesz or unit");
    angle->add_option("--out", ao.out, "CSV path (default stdout)");

    BlowupOptions xo;
    auto* blowup = app.add_subcommand("blowup-time", "Lower bound for the collapse time");
    blowup->add_option("--beta", xo.beta, "beta values")->delimiter(',');
    blowup->add_option("--gamma0", xo.gamma0, "Initial angles")->delimiter(',');
    blowup->add_option("--C,--c", xo.C, "Rate constants")->delimiter(',');
    blowup->add_option("--out", xo.out, "CSV path (default stdout)");

    OracleOptions oo;
    auto* oracle = app.add_subcommand("oracle", "Singular quadrature of the kernel difference over an annulus");
    oracle->add_option("--beta", oo.beta, "beta values")->delimiter(',');
    oracle->add_option("--r-in", oo.r_in, "Inner radius");
    oracle->add_option("--r-out", oo.r_out, "Outer radii")->delimiter(',');
    oracle->add_option("--v1", oo.v1, "Shift vector x component");
    oracle->add_option("--v2", oo.v2, "Shift vector y component");
    oracle->add_option("--abs-tol", oo.abs_tol, "Absolute tolerance");
    oracle->add_option("--out", oo.out, "CSV path (default stdout)");

    SimulateOptions so;
    auto* simulate = app.add_subcommand("simulate", "Run the pseudo-spectral solver");
    simulate->add_option("--config", so.config, "key = value config file")->required();
    simulate->add_option("--out", so.out, "Output directory");
    simulate->add_flag("--plot", so.plot, "Write SVG plots next to the CSV");
    simulate->add_flag("--dump-config", so.dump, "Print the effective config and exit");
    simulate->add_flag("--snapshot", so.snapshot, "Write the final field as final_field.bin");
    const auto keys = config_keys();
    std::map<std::string, std::string> raw;
    for (const auto& k : keys) simulate->add_option("--" + kebab(k), raw[k], "Overrides " + k)->group("Config overrides");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*verify) return cmd_verify(vo, out, err);
        if (*bounds) return cmd_bounds(bo, out, err);
        if (*angle) return cmd_angle(ao, out, err);
        if (*blowup) return cmd_blowup(xo, out, err);
        if (*oracle) return cmd_oracle(oo, out, err);
        if (*simulate) {
            for (const auto& k : keys)
                if (simulate->count("--" + kebab(k))) so.overrides[k] = raw[k];
            return cmd_simulate(so, out, err);
        }
    } catch (const ConfigError& e) {
        err << "config error";
        if (!e.key().empty()) err << " [" << e.key() << "]";
        if (e.line() > 0) err << " line " << e.line();
        err << ": " << e.what() << '\n';
        return kUsageError;
    } catch (const PreconditionError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kAssertionFailed;
    }
    return kUsageError;
}

}  // namespace gsqg::cli
