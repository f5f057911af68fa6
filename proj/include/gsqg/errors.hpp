#pragma once

#include <stdexcept>
#include <string>

namespace gsqg {

// Input outside the mathematical domain of an operation (poles, divergent integrals).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller violated a documented precondition (e.g. tau > 2r).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Series did not meet its stopping rule within max_terms.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial_sum, int terms)
        : std::runtime_error(what), partial_sum_(partial_sum), terms_(terms) {}
    double partial_sum() const { return partial_sum_; }
    int terms() const { return terms_; }

private:
    double partial_sum_;
    int terms_;
};

// Quadrature missed its tolerance; carries the best estimate reached.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double err_est)
        : std::runtime_error(what), estimate_(estimate), err_est_(err_est) {}
    double estimate() const { return estimate_; }
    double err_est() const { return err_est_; }

private:
    double estimate_;
    double err_est_;
};

// Configuration file or flag problem; line is 0 when not tied to a file line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string key, int line = 0)
        : std::runtime_error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

}  // namespace gsqg
