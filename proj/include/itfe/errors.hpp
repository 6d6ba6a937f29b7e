#pragma once

// Exception types shared by every itfe module. Each failure mode named in the
// public contracts has its own type so callers can catch exactly what they
// expect and let the rest propagate.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itfe {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exact-core
struct DegenerateComposition : Error {
    DegenerateComposition() : Error("composition has an identically zero denominator") {}
};
struct ZeroInput : Error {
    explicit ZeroInput(const std::string& what) : Error(what + ": input must be nonzero") {}
};
struct DivisionByZeroPolynomial : Error {
    DivisionByZeroPolynomial() : Error("division by the zero polynomial") {}
};

// series
struct DivisionByNonUnit : Error {
    DivisionByNonUnit() : Error("series division requires a divisor with nonzero constant term") {}
};
struct CompositionAtUnit : Error {
    CompositionAtUnit() : Error("inner series of a composition must have zero constant term") {}
};
struct NotReversible : Error {
    NotReversible() : Error("series reversion needs valuation exactly 1") {}
};

// dynamics / funceq
struct NotFixingZero : Error {
    NotFixingZero() : Error("R(0) must be 0") {}
};
struct Obstructed : Error {
    explicit Obstructed(int index)
        : Error("functional equation has no power-series solution: obstruction at index " +
                std::to_string(index)),
          index(index) {}
    int index;
};
struct NotContractive : Error {
    explicit NotContractive(const std::string& why) : Error("equation is not contractive: " + why) {}
};
struct GroundFieldExtensionRequired : Error {
    explicit GroundFieldExtensionRequired(const std::string& why)
        : Error("coefficients leave Q: " + why) {}
};
struct UnsupportedMultiplier : Error {
    explicit UnsupportedMultiplier(const std::string& why) : Error("unsupported multiplier: " + why) {}
};
struct UnsupportedEquation : Error {
    explicit UnsupportedEquation(const std::string& why) : Error("unsupported equation shape: " + why) {}
};

// apps
struct BoundaryReachable : Error {
    BoundaryReachable(int n, int level)
        : Error("walks of length " + std::to_string(n) + " can reach the boundary of the level-" +
                std::to_string(level) + " approximant") {}
};
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& why) : Error("budget exceeded: " + why) {}
};

// cli
struct ParseError : Error {
    ParseError(std::size_t position, const std::string& expected)
        : Error("syntax error at position " + std::to_string(position) + ": expected " + expected),
          position(position),
          expected(expected) {}
    std::size_t position;
    std::string expected;
};
struct NonIntegerExponent : ParseError {
    explicit NonIntegerExponent(std::size_t position)
        : ParseError(position, "an integer literal exponent") {}
};

} // namespace itfe
