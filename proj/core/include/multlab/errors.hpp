#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace multlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Domain tag or grid mismatch between operands.
class ContractError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

// The grid cannot resolve the requested object. required_points is the
// smallest M that would, when known (0 otherwise).
class ResolutionError : public Error {
public:
    ResolutionError(const std::string& what, std::size_t required_points = 0)
        : Error(what), required_points_(required_points) {}
    std::size_t required_points() const noexcept { return required_points_; }

private:
    std::size_t required_points_;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace multlab
