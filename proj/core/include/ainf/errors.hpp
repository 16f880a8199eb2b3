#pragma once

#include <stdexcept>
#include <string>

namespace ainf {

// Bad arguments or unmet preconditions (CLI exit code 2).
class ArgumentError : public std::runtime_error {
public:
    explicit ArgumentError(const std::string& what) : std::runtime_error(what) {}
};

// A violated structural identity (d^2 != 0, failed functor equation, ...).
// Carries the name of a witness (CLI exit code 3).
class StructuralError : public std::runtime_error {
public:
    StructuralError(const std::string& what, std::string witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

} // namespace ainf
