#pragma once

#include <stdexcept>
#include <string>

namespace pwlfix {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched or invalid matrix/vector dimensions.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// A square system with zero (or below-threshold) determinant.
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

/// nullspace_1d on an invertible matrix.
class NoNullspaceError : public Error {
public:
    explicit NoNullspaceError(const std::string& msg) : Error(msg) {}
};

/// nullspace_1d on a matrix with nullity >= 2.
class NullityTooLargeError : public Error {
public:
    explicit NullityTooLargeError(const std::string& msg) : Error(msg) {}
};

/// Two-piece input whose pieces do not agree across the switching plane.
class NotContinuousError : public Error {
public:
    explicit NotContinuousError(const std::string& msg) : Error(msg) {}
};

/// An operation called outside its stated precondition.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

/// Malformed scalar token, map file, or vector literal.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace pwlfix
