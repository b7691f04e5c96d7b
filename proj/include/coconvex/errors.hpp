#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coconvex {

// Error taxonomy shared by all modules. Everything derives from Error so
// callers (the CLI in particular) can map failures to exit codes uniformly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IdenticallyZero : Error {
    IdenticallyZero() : Error("polynomial is identically zero") {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(double x)
        : Error("evaluation point " + std::to_string(x) + " is outside the domain") {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(double x)
        : Error("division by zero at x = " + std::to_string(x)), at(x) {}
    double at;
};

struct PieceBoundaryCrossed : Error {
    using Error::Error;
};

// Parse failure with the byte offset of the offending character and the
// token set that would have been accepted there.
struct ParseError : Error {
    ParseError(std::size_t offset_, std::string expected_)
        : Error("parse error at offset " + std::to_string(offset_) +
                ": expected " + expected_),
          offset(offset_),
          expected(std::move(expected_)) {}
    std::size_t offset;
    std::string expected;
};

struct NotAPolynomial : Error {
    using Error::Error;
};

struct InvalidPiecewise : Error {
    using Error::Error;
};

struct Infeasible : Error {
    Infeasible() : Error("linear program is infeasible") {}
};

struct Unbounded : Error {
    Unbounded() : Error("linear program is unbounded") {}
};

struct InconsistentDegenerate : Error {
    InconsistentDegenerate()
        : Error("modulus is zero but the deviation is positive; "
                "no finite constant satisfies the bound") {}
};

struct NotInteriorPoint : Error {
    using Error::Error;
};

struct WitnessOutsideDomain : Error {
    using Error::Error;
};

struct PointInsideDomain : Error {
    using Error::Error;
};

struct UnknownExample : Error {
    explicit UnknownExample(const std::string& id)
        : Error("unknown example id: " + id) {}
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace coconvex
