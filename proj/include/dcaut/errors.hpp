#pragma once

#include <stdexcept>
#include <string>

namespace dcaut {

// Base class for every condition a caller can trigger or observe.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value handed to the library is wrong on its own (bad alphabet, priority
// out of range, malformed coloring, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// A documented precondition of an operation does not hold for the given
// inputs (partition is not a congruence, h is not a homomorphism, the
// don't-care language lacks a trivial right-congruence, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A guarded brute-force search would exceed its configured budget.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

// Input uses a feature outside the supported fragment (HOA import mostly).
class UnsupportedFeatureError : public Error {
public:
    explicit UnsupportedFeatureError(const std::string& feature)
        : Error("unsupported feature: " + feature), feature_(feature) {}
    const std::string& feature() const { return feature_; }

private:
    std::string feature_;
};

// A bug in this library: an internal self-check failed.
class InternalInvariantError : public Error {
public:
    using Error::Error;
};

// The teacher driving the learner contradicted itself (counterexample inside
// the don't-care set, or the distinguishing-experiment search hit its cap).
class TeacherInconsistencyError : public Error {
public:
    using Error::Error;
};

// Malformed textual input. Carries a 1-based line number when known (0 = n/a).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

}  // namespace dcaut
