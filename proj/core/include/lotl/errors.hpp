#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lotl {

// Error taxonomy shared by the library and the CLI. Each class maps to one
// CLI diagnostic and exit code.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed formula, word term or automaton file.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    explicit parse_error(const std::string& what) : error(what), offset_(0) {}

    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Structurally invalid input: mismatched shapes, wrong alphabets, violated
// preconditions.
class shape_error : public error {
public:
    using error::error;
};

// No accepting run was found within the configured search budget. This is
// distinct from a proof of absence.
class no_run_error : public error {
public:
    using error::error;
};

// A configured resource limit (item cap, expansion cap) was exceeded.
class resource_error : public error {
public:
    using error::error;
};

// File system problems.
class io_error : public error {
public:
    using error::error;
};

}  // namespace lotl
