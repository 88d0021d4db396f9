#pragma once

#include <stdexcept>
#include <string>

namespace qnc {

// Raised when an input violates a documented precondition or invariant.
// The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when two independent routes to the same quantity disagree.
// The CLI maps it to exit code 3.
class OracleMismatch : public std::runtime_error {
public:
    explicit OracleMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qnc
