#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace braggsim {

/// Base class for all errors raised by the simulation library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scatterer whose transmission amplitude is too close to zero to build a
/// transfer matrix from (the construction divides by t).
class DegenerateAmplitudeError : public Error {
public:
    using Error::Error;
};

/// A chain matrix whose m22 entry is too small to extract observables from,
/// or a degenerate linear system in the brute-force solver.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Configuration document failed validation. Carries every violation found,
/// not just the first one.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string msg = "configuration invalid:";
        for (const auto& s : issues) {
            msg += "\n  - " + s;
        }
        return msg;
    }

    std::vector<std::string> issues_;
};

/// Configuration document could not be parsed at all.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace braggsim
