#pragma once

#include <stdexcept>
#include <string>

namespace quantset {

/// Bad or degenerate input: violated precondition, malformed file, out-of-range argument.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative estimator failed to converge after its bounded restarts.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure: unreadable input, unwritable output.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quantset
