#pragma once

#include <stdexcept>
#include <string>

namespace gfn {

struct CycleDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooManyTrajectories : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonTerminatingPolicy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaxLengthExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownReward : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateField : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroReward : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergedLoss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when the composed policy has no outgoing probability at a state.
struct DeadState : std::runtime_error {
    DeadState(int state, const std::string& what) : std::runtime_error(what), state(state) {}
    int state;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gfn
