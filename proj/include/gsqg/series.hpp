#pragma once

#include <cmath>
#include <functional>
#include <optional>

namespace gsqg {

enum class TailPolicy { truncate, tail_bound };

struct SeriesControl {
    int max_terms = 20'000'000;
    double abs_tol = 1e-11;  // stop when |term| < abs_tol
    TailPolicy tail_policy = TailPolicy::tail_bound;

    void validate() const;
};

struct SeriesResult {
    double value = 0.0;
    double tail = 0.0;            // analytic tail added (0 under truncate)
    double error_estimate = 0.0;
    int terms = 0;
    bool converged = false;
};

// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            c_ += (sum_ - t) + x;
        else
            c_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

// Sums term(0) + term(1) + ... under ctrl; term is called with m = 0, 1, 2, ...
// in order, so stateful recurrences are fine. When the terms decay like K*m^p with
// p < -1 known, tail_bound adds the integral of the fitted power law past the
// last summed index. Throws ConvergenceError (with partial sum) if the stopping
// rule is not met and throw_on_failure is set.
SeriesResult sum_power_series(const std::function<double(int)>& term, const SeriesControl& ctrl,
                              std::optional<double> decay_exponent,
                              bool throw_on_failure = true);

}  // namespace gsqg
