#pragma once

#include <stdexcept>
#include <string>

namespace kcode {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A request would push a weight sum past its capacity.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// A requested code length is inconsistent with the base or limits.
class InvalidLength : public Error {
public:
    explicit InvalidLength(const std::string& what) : Error(what) {}
};

// A request sequence fails structural validation.
class InvalidRequest : public Error {
public:
    explicit InvalidRequest(const std::string& what) : Error(what) {}
};

// A file or argument could not be parsed.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Decoding could not match the code stream against the code tree.
class NotACode : public Error {
public:
    explicit NotACode(const std::string& what) : Error(what) {}
};

// The measure is undefined on a string where a value is required.
class UndefinedMeasure : public Error {
public:
    explicit UndefinedMeasure(const std::string& what) : Error(what) {}
};

// The layered solver could not find a base. Unreachable while the
// weight precondition holds; raising it signals a bug.
class HypothesisFailure : public std::logic_error {
public:
    explicit HypothesisFailure(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kcode
