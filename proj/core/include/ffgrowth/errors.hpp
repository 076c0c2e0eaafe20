#pragma once

#include <stdexcept>
#include <string>

namespace ffgrowth {

// Thrown when an exhaustive enumeration would exceed the caller-supplied
// work budget. Callers either raise the budget or switch to a cheaper
// method; the library never silently truncates a count.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ffgrowth
