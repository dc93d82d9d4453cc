#pragma once

#include <stdexcept>

namespace advicelab {

// Raised when an operation is asked to exceed its documented desk-scale
// capacity guard (table sizes, enumeration bounds). Maps to CLI exit code 3.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid experiment configuration. Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace advicelab
