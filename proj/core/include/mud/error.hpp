#pragma once

#include <stdexcept>
#include <string>

namespace mud {

/// Failure categories raised by the library.  The CLI maps `parse` to
/// exit code 2 and everything else to exit code 3.
enum class Errc {
    empty_input,
    leaf_mismatch,
    bad_size,
    bad_length,
    unknown_state,
    no_witness,
    too_large,
    bad_epsilon,
    index_out_of_range,
    promise_violation,
    malformed_instance,
    length_mismatch,
    overflow,
    parse,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

    /// Line number for parse errors, -1 when not applicable.
    int line() const noexcept { return line_; }
    void set_line(int line) noexcept { line_ = line; }

    /// Tree node at which an aggregation failed, -1 when not applicable.
    int node() const noexcept { return node_; }
    void set_node(int node) noexcept { node_ = node; }

private:
    Errc code_;
    int line_ = -1;
    int node_ = -1;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

[[noreturn]] inline void fail_at_line(Errc code, int line, const std::string& what) {
    Error e(code, "line " + std::to_string(line) + ": " + what);
    e.set_line(line);
    throw e;
}

}  // namespace mud
