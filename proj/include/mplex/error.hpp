#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mplex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad index, negative weight, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A node has zero degree where a transition matrix or stationary law needs it.
class IsolatedNode : public InvalidArgument {
public:
    IsolatedNode(std::size_t node, const std::string& where)
        : InvalidArgument(where + ": node " + std::to_string(node) + " has zero degree"), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed; carries the offending 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace mplex
