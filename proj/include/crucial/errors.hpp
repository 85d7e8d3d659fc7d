#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crucial {

// Argument outside an operation's stated domain (duplicate values, bad slot, ...).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation called on a value that violates its precondition
// (for instance asking whether a non-square-free permutation is crucial).
class precondition_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")")
        , position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace crucial
