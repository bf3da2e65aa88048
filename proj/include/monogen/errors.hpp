#pragma once

#include <stdexcept>
#include <string>

namespace monogen {

/// Mixing values from different rings, wrong variable contexts, malformed input.
struct structural_error : std::runtime_error {
    explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

/// Mathematically invalid request (inverting a non-unit, degree of zero polynomial, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Operation the library deliberately does not support on the given ring.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

/// A guard against combinatorial blow-up fired; carries the offending count.
struct resource_error : std::runtime_error {
    resource_error(const std::string& what, unsigned long long count)
        : std::runtime_error(what), count(count) {}
    unsigned long long count;
};

/// An internal invariant failed; indicates a bug, never a user error.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace monogen
