#pragma once

#include <stdexcept>

namespace lensdet {

// Thrown when a kernel is asked for a value too close to one of its poles,
// which normally means a contour line has been placed badly.
class PoleProximityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an iterative evaluation cannot reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lensdet
