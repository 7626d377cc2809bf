#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace combdrive {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inadmissible parameters or configuration. Carries every violated rule.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    explicit ValidationError(const std::string &message)
        : ValidationError(std::vector<std::string>{message}) {}

    const std::vector<std::string> &violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Point or coordinate outside the set an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested limit object only exists for alpha >= 2.
class RegimeError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    BudgetError(std::size_t required, std::size_t budget);

    std::size_t required() const noexcept { return required_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t required_;
    std::size_t budget_;
};

// Geometry/mesh invariants broken internally (untagged boundary, field/mesh mismatch).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class AssemblyError : public Error {
public:
    using Error::Error;
};

// Numerical failures. The CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string &what, int iterations, double residual)
        : NumericalError(what), iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

} // namespace combdrive
