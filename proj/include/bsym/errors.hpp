#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsym {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error with the byte offset of the offending character.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

struct ZeroDenominatorError : Error {
    ZeroDenominatorError() : Error("denominator normalizes to zero") {}
};

struct MissingAssignmentError : Error {
    explicit MissingAssignmentError(const std::string& atom)
        : Error("no value assigned to atom '" + atom + "'") {}
};

struct CycleError : Error {
    explicit CycleError(const std::string& msg) : Error(msg) {}
};

struct JetOrderError : Error {
    explicit JetOrderError(const std::string& msg) : Error(msg) {}
};

struct NonPolynomialError : Error {
    explicit NonPolynomialError(const std::string& msg) : Error(msg) {}
};

struct AlphabetMismatchError : Error {
    explicit AlphabetMismatchError(const std::string& msg) : Error(msg) {}
};

struct NotClosedError : Error {
    NotClosedError(int i, int j, const std::string& field)
        : Error("bracket [" + std::to_string(i) + "," + std::to_string(j) +
                "] leaves the span: " + field),
          i(i), j(j) {}
    int i, j;
};

struct DependentBasisError : Error {
    DependentBasisError() : Error("basis is linearly dependent") {}
};

struct SingularMatrixError : Error {
    SingularMatrixError() : Error("matrix is singular") {}
};

struct InvariantViolationError : Error {
    explicit InvariantViolationError(const std::string& msg) : Error(msg) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace bsym
