#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wloop {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated precondition: wrong dimension, edge not on plaquette, bad tree...
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position_(pos) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Memo/depth/time budget hit; the partial result is discarded, never returned as a value.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

}  // namespace wloop
