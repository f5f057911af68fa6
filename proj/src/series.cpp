#include "gsqg/series.hpp"

#include "gsqg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsqg {

void SeriesControl::validate() const {
    if (max_terms < 1) throw PreconditionError("SeriesControl.max_terms must be >= 1");
    if (!(abs_tol >= 0.0)) throw PreconditionError("SeriesControl.abs_tol must be >= 0");
}

SeriesResult sum_power_series(const std::function<double(int)>& term, const SeriesControl& ctrl,
                              std::optional<double> decay_exponent, bool throw_on_failure) {
    ctrl.validate();
    CompensatedSum acc;
    SeriesResult res;
    double last = 0.0;
    int m = 0;
    for (; m < ctrl.max_terms; ++m) {
        last = term(m);
        if (!std::isfinite(last))
            throw DomainError("series term " + std::to_string(m) + " is not finite");
        acc.add(last);
        if (m >= 1 && std::fabs(last) < ctrl.abs_tol) {
            res.converged = true;
            ++m;
            break;
        }
    }
    res.terms = m;
    const int last_index = m - 1;

    double tail = 0.0;
    if (decay_exponent && *decay_exponent < -1.0 && last_index >= 1 && last != 0.0) {
        const double p = *decay_exponent;
        const double k = last / std::pow(static_cast<double>(last_index), p);
        tail = k * std::pow(last_index + 0.5, p + 1.0) / (-(p + 1.0));
    }

    if (ctrl.tail_policy == TailPolicy::tail_bound) {
        res.tail = tail;
        res.value = acc.value() + tail;
        res.error_estimate = std::fabs(last) + std::fabs(tail) / (last_index + 1.0);
    } else {
        res.value = acc.value();
        res.error_estimate = std::max(std::fabs(last), std::fabs(tail));
    }

    if (!res.converged && throw_on_failure)
        throw ConvergenceError("series not converged after " + std::to_string(res.terms) + " terms",
                               res.value, res.terms);
    return res;
}

}  // namespace gsqg
