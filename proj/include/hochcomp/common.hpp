#pragma once

#include <stdexcept>
#include <string>

namespace hochcomp {

/**
 * Raised for malformed or mathematically invalid input: syntax errors in
 * quiver files, non-minimal relation sets, non-admissible ideals, violated
 * operation preconditions.  The CLI maps this to exit code 2.
 */
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
    input_error(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

/**
 * Raised when an internal mathematical invariant fails.  These conditions are
 * theorems of the construction; seeing one means a defect, and the CLI maps it
 * to exit code 1 (verification failure).
 */
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void check_invariant(bool ok, const std::string& msg) {
    if (!ok) throw invariant_error(msg);
}

} // namespace hochcomp
