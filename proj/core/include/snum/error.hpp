#pragma once

#include <stdexcept>
#include <string>

namespace snum {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Lorentz parameters outside 1 <= q <= p.
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

// Index type or table size exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// A construction cannot be carried out on the given input.
class ConstructionError : public Error {
public:
    using Error::Error;
};

// A certificate makes a claim that its own data contradicts.
class CertificateInvalid : public Error {
public:
    using Error::Error;
};

}  // namespace snum
