#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace matvine {

/// Malformed input: unreadable data, unknown identifiers, arguments out of range.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on a value that does not meet its precondition.
/// `condition` is a short tag naming the failed requirement.
struct precondition_error : std::logic_error {
    precondition_error(std::string condition, const std::string& what)
        : std::logic_error(what), condition(std::move(condition)) {}
    std::string condition;
};

/// A configured search or memory bound was exceeded.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal consistency failure on valid input.
struct defect_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace matvine
