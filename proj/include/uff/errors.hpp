#pragma once

#include <stdexcept>
#include <string>

namespace uff {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A vector that should be a unit state is not (|norm - 1| > 1e-9).
class NotUnitNorm : public Error {
public:
    using Error::Error;
};

// Operands have incompatible dimension signatures.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// A sigma mask bit addresses a factor of dimension != 2.
class NonQubitPosition : public Error {
public:
    using Error::Error;
};

// A retained coordinate was expected to be unflipped but is not.
class NotCanonical : public Error {
public:
    using Error::Error;
};

// A size cap was exceeded (full-vector expansion, subset transforms).
class TooLarge : public Error {
public:
    using Error::Error;
};

// A split tree path does not fix every qubit position exactly once.
class MalformedTree : public Error {
public:
    using Error::Error;
};

// An operation restricted to all-qubit states met a factor of dim != 2.
class NonQubitFactor : public Error {
public:
    using Error::Error;
};

// A candidate basis failed orthonormality validation.
class InvalidUob : public Error {
public:
    using Error::Error;
};

// A matrix expected to be self-adjoint is not, within tolerance.
class NotHermitian : public Error {
public:
    using Error::Error;
};

// A black-box oracle produced incompatible values at equal coordinates.
class InconsistentOracle : public Error {
public:
    using Error::Error;
};

// A black-box oracle is not a quadratic form on the probed factor.
class NotAForm : public Error {
public:
    using Error::Error;
};

// Malformed or out-of-contract input (files, JSON fields, CLI arguments).
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace uff
