#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diokex {

// Mixing values from incompatible rings (variable count or modulus differ).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Inversion asked for an exact c-th root that does not exist.  Over the
// integers this signals a corrupted transcript or a mismatched chain.
class NotAPerfectPower : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// gcd(c, phi(w)) != 1: the exponent cannot be inverted modulo phi(w).
class NoInverseExponent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The peer's relation (or a requested parameter set) fails validation.
class RelationRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class KeygenFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TranscriptCorrupted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A search region is larger than the configured evaluation ceiling.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Trial division gave up before fully factoring the modulus.
class FactorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace diokex
