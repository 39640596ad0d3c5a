#pragma once

#include <stdexcept>
#include <string>

namespace decayspec {

// Invalid user input (bad arguments, bad config). CLI maps this to exit code 2.
using invalid_argument = std::invalid_argument;

// A numerical routine failed to converge or detected an inconsistency.
// CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant was violated (e.g. a non-Hermitian field claiming to
// be real-valued).
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

// A statistical precondition was not met (e.g. empty spectrum in the window
// after exhausting all realizations). CLI maps this to exit code 4.
class statistical_error : public std::runtime_error {
public:
    explicit statistical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace decayspec
