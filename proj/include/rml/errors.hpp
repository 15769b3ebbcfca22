#pragma once

#include <stdexcept>
#include <string>

namespace rml {

/// Argument outside the mathematical domain of a function (x <= 0, param <= 0, p outside (0,1)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structurally invalid call: empty sample, n = 0, unsorted edges, p* <= 0.5.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to meet its tolerance. Carries the best
/// estimate reached and an error bound for it.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// No sign change on a root-finding bracket (after any expansion).
class BracketError : public NumericalError {
public:
    BracketError(const std::string& what, double lo, double hi)
        : NumericalError(what, lo, hi - lo), lo_(lo), hi_(hi) {}

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Malformed input file. `line` is 1-based; 0 when the error is not tied to a line.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace rml
