#pragma once

#include <stdexcept>
#include <string>

namespace qmaass {

// Every failure mode a caller can observe. All derive from std::runtime_error
// so the CLI can report them uniformly.

struct NotInGroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInDoubleCoset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadResidue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point outside the domain of a quantum form (e.g. the cusp-1/2 orbit for f_L).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// cx + d = 0 in a cocycle evaluation.
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quantity that must be a rational integer was not. Always a bug.
struct NonIntegerResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qmaass
