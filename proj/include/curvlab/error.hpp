#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live in different variable counts, centers or domains.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// A series that should be Hermitian is off by more than the allowed tolerance.
class HermitianViolation : public Error {
public:
    using Error::Error;
};

// Constant term unsuitable for inversion, logarithm or real powers.
class BadConstantTerm : public Error {
public:
    using Error::Error;
};

// Point outside the declared domain or the series guard radius.
class DomainError : public Error {
public:
    using Error::Error;
};

// Principal logarithm would cross the negative real axis.
class BranchError : public Error {
public:
    using Error::Error;
};

// Requested Taylor block does not fit inside the truncation order.
class OrderError : public Error {
public:
    using Error::Error;
};

// Curvature data that cannot come from a positive definite kernel.
class NumericBreakdown : public Error {
public:
    using Error::Error;
};

} // namespace curvlab
