#pragma once

#include <stdexcept>
#include <string>

namespace gradcontact {

/// Base class for failures of a numerical solve (exit code 3 at the CLI).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series or iteration did not meet its stopping criterion within its cap.
class ConvergenceError : public SolverError {
public:
    using SolverError::SolverError;
};

/// No sign change was found for a bracketed root search.
class BracketError : public SolverError {
public:
    using SolverError::SolverError;
};

/// The truncated linear system is singular or too ill-conditioned to trust.
class SingularSystemError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Invalid user configuration (exit code 2 at the CLI).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace gradcontact
