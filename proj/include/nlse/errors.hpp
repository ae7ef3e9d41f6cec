#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlse {

/// A root search or iteration that did not converge. Carries the
/// sequence of iterates (or bracket endpoints) for diagnostics.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, std::vector<double> trace = {})
        : std::runtime_error(what), trace_(std::move(trace)) {}

    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

/// The requested solution does not exist for the given parameters.
/// Used where absence is an error; where it is an expected outcome the
/// API returns a NoSolution value instead.
class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NoSolution {
    std::string reason;
};

} // namespace nlse
