#pragma once

#include <stdexcept>

namespace vlc {

// Invalid configuration, arguments or input files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Interference model whose feedback polynomial has a root on or outside
// the unit circle.
class StabilityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Data-dependent failure inside the statistical estimation chain.
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The interference ACF carries no usable power at lag 0.
class DegenerateAcfError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

// Levinson-Durbin left the unit circle even after the regularized retry.
class IllConditionedError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

}  // namespace vlc
