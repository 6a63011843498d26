#pragma once

#include <stdexcept>

namespace randpick {

// Request is well-formed but cannot be satisfied on this input
// (e.g. budget larger than the candidate pool).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input exceeds a hard size limit (exact oracles stop at 13 nodes).
struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace randpick
