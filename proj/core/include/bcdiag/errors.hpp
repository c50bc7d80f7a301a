#pragma once

#include <stdexcept>
#include <string>

namespace bcdiag {

/// Rejected inputs: points outside the admissible disk, malformed files,
/// out-of-range parameters. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A stated precondition of an operation does not hold (e.g. a finite-difference
/// stencil too close to a critical point).
class PreconditionError : public ValidationError {
public:
    explicit PreconditionError(const std::string& what) : ValidationError(what) {}
};

/// Evaluation requested at (or within rounding distance of) a singularity of the
/// quantity, such as the logarithmic derivative at a zero.
class SingularInputError : public ValidationError {
public:
    explicit SingularInputError(const std::string& what) : ValidationError(what) {}
};

/// A computation failed to reach its accuracy contract (non-converging
/// quadrature, root residual above tolerance, phase bracketing failure).
/// Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bcdiag
