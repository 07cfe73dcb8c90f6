#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace directions {

/// Input lies outside the mathematical domain of an operation
/// (zero vector, index set that does not meet a point, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition on the arguments does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured tuple, element or memory budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A property that is proven to hold failed; indicates a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Resource limits shared by the enumeration and density modules.
///
/// Defaults can be overridden through the DIRECTIONS_BUDGET environment
/// variable: either a bare integer (tuple budget) or a comma separated list
/// of `tuples=`, `elements=`, `net=` assignments, e.g.
/// `DIRECTIONS_BUDGET=tuples=1e9,net=5e7`.
struct Budget {
    std::uint64_t max_tuples = 100'000'000;
    std::uint64_t max_elements = 200'000'000;
    std::uint64_t max_net_points = 20'000'000;

    static Budget from_env();
    static Budget parse(const std::string& text);
};

}  // namespace directions
