#pragma once

#include <stdexcept>
#include <string>

namespace hyperpolygon {

/// A mathematical validation failed: a point is off the level set, a residue
/// leaves the minimal orbit, a polynomial overflows its degree bound.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what, int index = -1)
        : std::runtime_error(what), index_(index) {}

    /// 1-based offending edge or entry, or -1 when not tied to one.
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// An iterative numerical method ran out of iterations.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Malformed input: unparsable files or values, inconsistent shapes, flags
/// out of range.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hyperpolygon
