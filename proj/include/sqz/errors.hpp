#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqz {

// Invalid physical parameter (non-positive frequency, extraneous parameters, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Time outside a basis/integral domain.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Quantity the model does not define (e.g. integration constants of a custom system).
class NotDefinedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, double tau) : NumericalError(what), tau_(tau) {}
    double tau() const noexcept { return tau_; }

private:
    double tau_;
};

class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double a, double b)
        : NumericalError(what), a_(a), b_(b) {}
    double lower() const noexcept { return a_; }
    double upper() const noexcept { return b_; }

private:
    double a_, b_;
};

class ResolutionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DomainEscapeError : public NumericalError {
public:
    DomainEscapeError(const std::string& what, double tau) : NumericalError(what), tau_(tau) {}
    double tau() const noexcept { return tau_; }

private:
    double tau_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& what, double t)
        : std::runtime_error(what + " at t=" + std::to_string(t)), t_(t) {}
    double t() const noexcept { return t_; }

private:
    double t_;
};

} // namespace sqz
