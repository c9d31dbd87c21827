#pragma once

#include <stdexcept>
#include <string>

namespace entrofunc {

// Malformed or inconsistent input: bad spec files, precondition violations,
// incompatible arguments. CLI maps this to exit code 2.
struct spec_error : std::runtime_error {
    explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource ceiling was hit (bit budget, cardinality cap,
// subcover size cap). Never degraded silently. CLI maps this to exit code 3.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact comparison could not be decided within the configured precision
// escalation ladder.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace entrofunc
