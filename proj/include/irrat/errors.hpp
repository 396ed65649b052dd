#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irrat {

// Syntax error with the character offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position), message_(message) {}

    std::size_t position() const { return position_; }
    const std::string& raw_message() const { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

class EvalError : public std::runtime_error {
public:
    enum class Kind {
        NonPositiveValue,
        InexactDivision,
        BitBudgetExceeded,
        SieveLimitExceeded,
    };

    EvalError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Magnitude arithmetic that the log-space representation cannot express
// (general subtraction/division of huge operands, level cap overflow).
class MagnitudeUnsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CertificateGap : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergenceEvidence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientWidth : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndeterminateWidth : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedSignMode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPolynomial : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownName : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParam : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace irrat
