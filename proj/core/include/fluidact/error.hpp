#pragma once

#include <stdexcept>
#include <string>

namespace fluidact {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Domain or unit violation in user-supplied inputs.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Requested observation contradicts the stability regime (calibration).
class ModeMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Hydrodynamic quantity requested for a medium without density (vacuum).
class Inapplicable : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Force law evaluated at the electrode with no dielectric in between.
class TouchingSingularity : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace fluidact
