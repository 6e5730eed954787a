#pragma once

#include <stdexcept>
#include <string>

namespace sacrp {

/// Base of every domain error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The pick list cannot be retrieved completely.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A plan, batch, or assignment violates the retrieval semantics.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Which accessibility condition a retrieval step broke.
enum class AccessCondition {
    NothingAbove,   // residual of the target's own stack must equal its height
    Passage,        // every stack nearer the entry must sit exactly one below
    AlreadyRetrieved,
    ClearanceRange,
};

class AccessibilityError : public ValidationError {
public:
    AccessibilityError(std::string what, AccessCondition condition, int step, int stack)
        : ValidationError(std::move(what)), condition_(condition), step_(step), stack_(stack) {}

    AccessCondition condition() const noexcept { return condition_; }
    /// 0-based position in the cycle's retrieval order.
    int step() const noexcept { return step_; }
    /// 1-based stack where the condition failed.
    int stack() const noexcept { return stack_; }

private:
    AccessCondition condition_;
    int step_;
    int stack_;
};

}  // namespace sacrp
