#pragma once

#include <stdexcept>
#include <string>

namespace kmbqkd {

/// An angle argument was NaN or infinite.
class InvalidAngleError : public std::invalid_argument {
public:
    explicit InvalidAngleError(const std::string& what) : std::invalid_argument(what) {}
};

/// A rate whose denominator vanishes for the given bases (e.g. coincident bases).
class UndefinedRateError : public std::domain_error {
public:
    explicit UndefinedRateError(const std::string& what) : std::domain_error(what) {}
};

/// Least-squares fit without enough spread in the regressor.
class DegenerateFitError : public std::domain_error {
public:
    explicit DegenerateFitError(const std::string& what) : std::domain_error(what) {}
};

/// A session produced no events from which the requested rate can be estimated.
class NoDataError : public std::runtime_error {
public:
    explicit NoDataError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed sweep file, trace or session report.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kmbqkd
