#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

/// Degenerate or unresolvable extraction state (ambiguous marching cell,
/// dangling arc, unstable ring count ...).  CLI maps this to exit code 2.
struct ExtractionError : std::runtime_error {
    explicit ExtractionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nodal
