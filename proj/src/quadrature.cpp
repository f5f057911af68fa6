#include "gsqg/quadrature.hpp"

#include "gsqg/errors.hpp"
#include "gsqg/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

namespace gsqg {

namespace {

constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx), f2 = f(c + dx);
        resk += wgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    const double value = resk * h;
    const double err = std::fabs((resk - resg) * h);
    return {a, b, value, err};
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, std::vector<double> points,
                        const GKOptions& opts) {
    if (points.size() < 2) throw PreconditionError("integrate_gk: need at least two points");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::priority_queue<Panel> heap;
    for (size_t i = 0; i + 1 < points.size(); ++i) heap.push(gk15(f, points[i], points[i + 1]));

    auto totals = [&heap]() {
        auto copy = heap;
        CompensatedSum v, e;
        while (!copy.empty()) {
            v.add(copy.top().value);
            e.add(copy.top().err);
            copy.pop();
        }
        return std::pair{v.value(), e.value()};
    };

    auto [value, err] = totals();
    int splits = 0;
    while (err > std::max(opts.abs_tol, opts.rel_tol * std::fabs(value)) && splits < opts.max_subdivisions) {
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++splits;
        if (splits % 64 == 0) std::tie(value, err) = totals();
    }
    auto [v, e] = totals();
    QuadResult res{v, e, splits};
    if (res.err_est > std::max(opts.abs_tol, opts.rel_tol * std::fabs(res.value)) && opts.throw_on_failure)
        throw AccuracyError("integrate_gk: tolerance not reached after " + std::to_string(splits) +
                                " subdivisions",
                            res.value, res.err_est);
    return res;
}

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b, const GKOptions& opts) {
    return integrate_gk(f, std::vector<double>{a, b}, opts);
}

double periodic_trapezoid(const std::function<double(double)>& f, double period, int n) {
    if (n < 1) throw PreconditionError("periodic_trapezoid: n must be >= 1");
    CompensatedSum s;
    const double h = period / n;
    for (int i = 0; i < n; ++i) s.add(f(i * h));
    return s.value() * h;
}

}  // namespace gsqg
