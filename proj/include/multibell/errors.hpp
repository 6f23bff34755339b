#pragma once

#include <stdexcept>
#include <string>

namespace multibell {

// Error taxonomy shared by the whole library. The CLI maps these to process
// exit codes, so new error kinds must be added here rather than thrown ad hoc.

// Malformed textual input (state specs, flag values).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Structural mismatch between an object and an operation (wrong party count,
// wrong settings shape).
struct arity_error : std::runtime_error {
    explicit arity_error(const std::string& what) : std::runtime_error(what) {}
};

// A numeric argument outside its admissible range.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive enumeration would exceed the supported size budget.
struct size_error : std::runtime_error {
    explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

// An object failed its own invariants (non-Hermitian state, non-unit vector).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace multibell
