#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fpsi {

/// Invalid arguments, unknown names, malformed configuration.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Interface edges of the two meshes do not coincide.
class IncompatibleMeshError : public InputError {
public:
    using InputError::InputError;
};

/// Any failure inside a linear solve or a time-stepping driver.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularSystemError : public SolverError {
public:
    using SolverError::SolverError;
};

class IterationLimitError : public SolverError {
public:
    IterationLimitError(const std::string& what, std::vector<double> history)
        : SolverError(what), history_(std::move(history)) {}

    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

}  // namespace fpsi
