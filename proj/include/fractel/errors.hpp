#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fractel {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Container sizes are inconsistent with what the operation requires.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Invalid or missing configuration; remembers the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what_arg)
        : Error("config key '" + key + "': " + what_arg), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A zero pivot was met during elimination; remembers the pivot row.
class SingularityError : public Error {
public:
    explicit SingularityError(std::ptrdiff_t index)
        : Error("singular system: zero pivot at row " + std::to_string(index)),
          index_(index) {}

    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

/// Expression evaluation failed; remembers the evaluation point.
class EvalError : public Error {
public:
    EvalError(const std::string& what_arg, double x, double t)
        : Error(what_arg + " at (x, t) = (" + std::to_string(x) + ", " +
                std::to_string(t) + ")"),
          x_(x),
          t_(t) {}

    double x() const noexcept { return x_; }
    double t() const noexcept { return t_; }

private:
    double x_;
    double t_;
};

/// Expression text could not be parsed; remembers the byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what_arg, std::size_t offset)
        : Error(what_arg + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// The requested tolerance was not reached within the refinement budget.
class AccuracyError : public Error {
public:
    using Error::Error;
};

}  // namespace fractel
