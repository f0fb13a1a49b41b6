#ifndef SENSIVAR_ERRORS_HPP
#define SENSIVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sensivar {

// Error taxonomy. The CLI maps these onto process exit codes:
// ConfigError -> 2, ModelError -> 3, AlignmentError -> 4.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid user input: designs, estimator combinations, config files.
struct ConfigError : Error {
    using Error::Error;
};

struct DesignError : ConfigError {
    using ConfigError::ConfigError;
};

struct CombinationError : ConfigError {
    using ConfigError::ConfigError;
};

struct UnsupportedDimensionError : ConfigError {
    using ConfigError::ConfigError;
};

struct EmptyDesignError : ConfigError {
    using ConfigError::ConfigError;
};

// VARS grid resolution 1/h must be an integer >= 2.
struct ResolutionError : ConfigError {
    using ConfigError::ConfigError;
};

// The model (builtin or external) failed or produced unusable output.
struct ModelError : Error {
    using Error::Error;
};

struct InvalidOutputError : ModelError {
    using ModelError::ModelError;
};

struct ConstantOutputError : ModelError {
    using ModelError::ModelError;
};

struct DivergenceError : ModelError {
    using ModelError::ModelError;
};

// Row counts between design and outputs do not line up.
struct AlignmentError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace sensivar

#endif
