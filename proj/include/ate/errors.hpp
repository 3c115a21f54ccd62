#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ate {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input violates a documented precondition (bad modulus, wrong residue class, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Text failed to parse; `position` is a 0-based offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

/// Requested inverse of a non-unit; carries the offending gcd.
class NotAUnitError : public Error {
public:
    NotAUnitError(std::uint64_t value, std::uint64_t modulus, std::uint64_t g)
        : Error("not a unit: gcd(" + std::to_string(value) + ", " + std::to_string(modulus) +
                ") = " + std::to_string(g)),
          gcd(g) {}
    std::uint64_t gcd;
};

/// Polynomial does not map integers to integers. Carries a witness point.
class NotIntegerValuedError : public Error {
public:
    NotIntegerValuedError(std::int64_t n, const std::string& value_text)
        : Error("polynomial is not integer-valued: P(" + std::to_string(n) + ") = " + value_text),
          witness_n(n), value_text(value_text) {}
    std::int64_t witness_n;
    std::string value_text;
};

/// Exhaustive subset search refused because the modulus exceeds the bound.
class RefuseExhaustiveError : public Error {
public:
    RefuseExhaustiveError(std::uint64_t n, std::uint64_t bound)
        : Error("refusing exhaustive search at N = " + std::to_string(n) + " (bound " +
                std::to_string(bound) + "); use the seeded sampling mode instead") {}
};

/// A proof-backed inequality cannot be asserted for these inputs.
class InapplicableBoundError : public Error {
public:
    explicit InapplicableBoundError(const std::string& msg) : Error(msg) {}
};

/// A bounded search exhausted its budget without finding a witness.
class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& msg) : Error(msg) {}
};

} // namespace ate
