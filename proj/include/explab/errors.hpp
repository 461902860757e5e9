#pragma once

#include <stdexcept>
#include <string>

namespace explab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A point lies outside the declared domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Evaluation requested at a declared singular point of a field.
class SingularityError : public Error {
public:
    explicit SingularityError(const std::string& msg) : Error(msg) {}
};

/// An integration stage or output left the domain. Carries the offending point.
class EscapeError : public Error {
public:
    EscapeError(const std::string& msg, double px, double py)
        : Error(msg), stage_x(px), stage_y(py) {}
    double stage_x;
    double stage_y;
};

/// Invalid construction parameters (bad knots, non-injective time, overflow...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

/// Malformed or incomplete experiment configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace explab
