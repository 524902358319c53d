#pragma once

#include <stdexcept>
#include <string>

namespace ovlc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable as a finite double.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// csc argument too close to a multiple of pi.
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, double argument)
        : std::domain_error(what), argument_(argument) {}
    double argument() const noexcept { return argument_; }

private:
    double argument_;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return err_; }

private:
    double best_;
    double err_;
};

}  // namespace ovlc
