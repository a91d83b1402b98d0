#pragma once

#include <stdexcept>
#include <string>

namespace psibound {

// Base of every error raised by the library. The CLI maps subclasses onto
// distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition (hypothesis of a proposition, parameter range)
// does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Zero table is missing zeros or otherwise inconsistent with the
// Riemann-von Mangoldt count.
class CompletenessError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public Error {
public:
    using Error::Error;
};

// Requested configuration needs zeros above the available height.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double required_height)
        : Error(what), required_height_(required_height) {}
    double required_height() const noexcept { return required_height_; }

private:
    double required_height_;
};

// Grid extrema do not change sign; the interpolation step assumes they do.
class SignAssumptionError : public Error {
public:
    using Error::Error;
};

// A numerical procedure could not reach its accuracy target.
class AccuracyError : public Error {
public:
    using Error::Error;
};

}  // namespace psibound
