#pragma once

#include <stdexcept>
#include <string>

namespace rotwalk {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A request went past the certified horizon of a truncated descriptor.
struct TruncationExceeded : Error {
    explicit TruncationExceeded(const std::string& what) : Error(what) {}
};

// A comparison could not be certified uniformly over the cylinder of a
// truncated descriptor.
struct UndecidableAtValidity : Error {
    explicit UndecidableAtValidity(const std::string& what) : Error(what) {}
};

// An exact comparison came out equal where irrationality forbids it; the
// input cannot describe an irrational number.
struct EqualityDetected : Error {
    explicit EqualityDetected(const std::string& what) : Error(what) {}
};

struct DigitConstraintViolation : Error {
    explicit DigitConstraintViolation(const std::string& what) : Error(what) {}
};

struct TableTooShallow : Error {
    explicit TableTooShallow(const std::string& what) : Error(what) {}
};

struct BetaOutOfRange : Error {
    explicit BetaOutOfRange(const std::string& what) : Error(what) {}
};

// Offsets must live in the angle's field; mixing sqrt(2) offsets with a
// sqrt(5) angle (or with a rule-based angle) is rejected, not approximated.
struct MixedField : Error {
    explicit MixedField(const std::string& what) : Error(what) {}
};

struct HypothesisViolated : Error {
    explicit HypothesisViolated(const std::string& what) : Error(what) {}
};

struct DepthExceeded : Error {
    explicit DepthExceeded(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace rotwalk
