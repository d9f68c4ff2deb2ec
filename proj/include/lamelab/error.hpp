#pragma once

#include <stdexcept>
#include <string>

namespace lamelab {

/// Failure categories. The CLI maps Validation to exit code 2 and
/// NonConvergence / Resonant to exit code 3.
enum class ErrorKind {
    Validation,      // bad input, broken precondition, mismatched grids
    NonConvergence,  // an iterative method ran out of iterations
    Resonant,        // the shifted operator is singular on the torus
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(const std::string& what);
[[noreturn]] void fail_convergence(const std::string& what);

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
}

}  // namespace lamelab
