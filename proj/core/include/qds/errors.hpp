// errors.hpp — Exception hierarchy mirroring the CLI exit-code contract

#pragma once

#include <stdexcept>
#include <string>

namespace qds {

// Malformed or rejected input (exit code 2). Dimension mismatches and
// out-of-range parameters use std::invalid_argument, which callers treat
// the same way.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A system failed CPTP / generator verification where a verified system is
// required (exit code 1).
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// The computed structure contradicts itself: tolerance failure, non-CPTP
// input slipping through, or a theory-guaranteed property not holding
// numerically (exit code 3).
struct StructuralInconsistency : std::runtime_error {
    explicit StructuralInconsistency(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qds
