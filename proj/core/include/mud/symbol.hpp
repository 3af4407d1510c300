#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mud {

/// A token from a declared finite alphabet: either a single bounded integer
/// or a structured record rendered as a tuple of integers (e.g. a
/// SetParity record "index bit" has arity 2).  Values compare and print
/// field-wise; the text form is comma-separated.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::int64_t v) : fields_{v} {}
    Symbol(std::initializer_list<std::int64_t> fields) : fields_(fields) {}
    explicit Symbol(std::vector<std::int64_t> fields) : fields_(std::move(fields)) {}

    std::size_t arity() const { return fields_.size(); }

    /// Single-field access; throws for records.
    std::int64_t scalar() const;

    std::int64_t field(std::size_t i) const;

    const std::vector<std::int64_t>& fields() const { return fields_; }

    std::string str() const;

    friend auto operator<=>(const Symbol&, const Symbol&) = default;

private:
    std::vector<std::int64_t> fields_;
};

}  // namespace mud
