#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace harmconv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter outside the documented range (a ∉ (−1,1), β ∉ (0,π), ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Point outside the open unit disk, or too close to a boundary pole.
class DomainError : public Error {
public:
    using Error::Error;
};

// An algebraic identity that must hold by construction did not.
class StructuralError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<std::complex<double>> best, double residual)
        : Error(what), best_(std::move(best)), residual_(residual) {}

    const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<std::complex<double>> best_;
    double residual_;
};

// Output file could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace harmconv
