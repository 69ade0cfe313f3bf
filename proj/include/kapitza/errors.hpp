#pragma once

#include <stdexcept>
#include <string>

namespace kapitza {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

struct DimensionTooLarge : NumericalError {
    using NumericalError::NumericalError;
};

struct DivergedTrajectory : NumericalError {
    using NumericalError::NumericalError;
};

struct DivergedNorm : NumericalError {
    using NumericalError::NumericalError;
};

struct NonRealEffectivePotential : NumericalError {
    using NumericalError::NumericalError;
};

struct NoBoundState : NumericalError {
    using NumericalError::NumericalError;
};

struct EigenvalueAtZero : NumericalError {
    using NumericalError::NumericalError;
};

struct NoTransitionFound : NumericalError {
    using NumericalError::NumericalError;
};

struct ReflectanceOutOfRange : NumericalError {
    using NumericalError::NumericalError;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace kapitza
