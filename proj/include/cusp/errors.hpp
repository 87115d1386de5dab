#pragma once

#include <stdexcept>
#include <string>

namespace cusp {

// Raised when inputs violate a documented precondition.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical computation fails (non-convergence, singular system).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cusp
