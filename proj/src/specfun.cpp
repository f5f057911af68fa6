#include "gsqg/specfun.hpp"

#include "gsqg/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gsqg {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

double gamma_fn(double x) {
    if (std::isnan(x)) throw DomainError("gamma_fn: NaN argument");
    if (is_nonpositive_integer(x)) throw DomainError("gamma_fn: pole at x = " + fmt(x));
    return std::tgamma(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

double pochhammer(double a, int m) {
    if (m < 0) throw PreconditionError("pochhammer: m must be >= 0");
    double p = 1.0;
    for (int k = 0; k < m; ++k) p *= a + k;
    return p;
}

void Hyp2F1Args::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z))
        throw DomainError("hyp2f1: non-finite argument");
    if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c = " + fmt(c) + " is a non-positive integer");
    if (z < 0.0 || z > 1.0) throw DomainError("hyp2f1: z = " + fmt(z) + " outside [0, 1]");
}

SeriesResult hyp2f1_series(const Hyp2F1Args& args, const SeriesControl& ctrl) {
    args.validate();
    ctrl.validate();
    const double a = args.a, b = args.b, c = args.c, z = args.z;
    SeriesResult res;

    if (z == 1.0) {
        const double s = c - a - b;
        if (!(s > 0.0))
            throw DomainError("hyp2f1: z = 1 requires c - a - b > 0, got " + fmt(s));
        res.value = gamma_fn(c) * gamma_fn(s) * rgamma(c - a) * rgamma(c - b);
        res.converged = true;
        return res;
    }

    CompensatedSum acc;
    double t = 1.0;
    double ratio = 0.0;
    acc.add(t);
    int terms = 1;
    for (int m = 0; terms < ctrl.max_terms; ++m) {
        ratio = (a + m) * (b + m) / ((c + m) * (m + 1.0)) * z;
        t *= ratio;
        acc.add(t);
        ++terms;
        if (std::fabs(t) < ctrl.abs_tol) {
            res.converged = true;
            break;
        }
    }
    res.terms = terms;

    double tail = 0.0;
    const double r = std::fabs(ratio);
    if (t != 0.0 && r < 1.0) tail = t * ratio / (1.0 - ratio);
    if (ctrl.tail_policy == TailPolicy::tail_bound) {
        res.tail = tail;
        res.value = acc.value() + tail;
        res.error_estimate = std::fabs(t) * r;
    } else {
        res.value = acc.value();
        res.error_estimate = std::fabs(tail);
    }
    return res;
}

double hyp2f1(const Hyp2F1Args& args, const SeriesControl& ctrl) {
    SeriesResult r = hyp2f1_series(args, ctrl);
    if (!r.converged)
        throw ConvergenceError("hyp2f1: series not converged after " + std::to_string(r.terms) + " terms",
                               r.value, r.terms);
    return r.value;
}

double a_beta(double beta) {
    if (!(beta > 0.0 && beta < 2.0)) throw DomainError("a_beta: beta = " + fmt(beta) + " outside (0, 2)");
    return gamma_fn((3.0 - beta) / 2.0) / (std::sqrt(std::numbers::pi) * gamma_fn(2.0 - beta / 2.0));
}

namespace {

// c_m = (beta/2)_m (1/2)_m / (m!)^2 by recurrence; must be called with m = 0, 1, ...
struct HalfParameterCoefficients {
    double beta;
    double c = 1.0;
    double next(int m) {
        if (m > 0) c *= (beta / 2.0 + m - 1) * (0.5 + m - 1) / (static_cast<double>(m) * m);
        return c;
    }
};

void check_open_interval(double beta, const char* who) {
    if (!(beta > 0.0 && beta < 2.0))
        throw DomainError(std::string(who) + ": beta = " + fmt(beta) + " outside (0, 2)");
}

}  // namespace

SeriesResult series_A(double beta, const SeriesControl& ctrl) {
    check_open_interval(beta, "series_A");
    HalfParameterCoefficients cm{beta};
    return sum_power_series([&](int m) { return cm.next(m) / (2.0 * m + 2.0); }, ctrl,
                            (beta - 5.0) / 2.0);
}

SeriesResult series_soma(double beta, const SeriesControl& ctrl) {
    check_open_interval(beta, "series_soma");
    HalfParameterCoefficients cm{beta};
    return sum_power_series([&](int m) { return cm.next(m) / (2.0 * m + beta - 2.0); }, ctrl,
                            (beta - 5.0) / 2.0);
}

double soma_closed_form(double beta) {
    check_open_interval(beta, "soma_closed_form");
    return gamma_fn((3.0 - beta) / 2.0) / (std::sqrt(std::numbers::pi) * gamma_fn((4.0 - beta) / 2.0)) /
           (beta - 2.0);
}

double inc_beta(double x, double a, double b, const SeriesControl& ctrl) {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("inc_beta: x = " + fmt(x) + " outside (0, 1]");
    if (!(a > 0.0)) throw DomainError("inc_beta: a must be > 0");
    if (x == 1.0 && b <= 0.0)
        throw DomainError("inc_beta: x = 1 with b = " + fmt(b) + " <= 0 diverges");
    return std::pow(x, a) / a * hyp2f1({a, 1.0 - b, a + 1.0, x}, ctrl);
}

}  // namespace gsqg
