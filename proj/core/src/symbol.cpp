#include "mud/symbol.hpp"

#include "mud/error.hpp"

namespace mud {

std::int64_t Symbol::scalar() const {
    if (fields_.size() != 1) {
        fail(Errc::malformed_instance,
             "expected scalar symbol, got arity " + std::to_string(fields_.size()));
    }
    return fields_[0];
}

std::int64_t Symbol::field(std::size_t i) const {
    if (i >= fields_.size()) {
        fail(Errc::index_out_of_range, "symbol field " + std::to_string(i) +
                                           " out of range (arity " +
                                           std::to_string(fields_.size()) + ")");
    }
    return fields_[i];
}

std::string Symbol::str() const {
    std::string out;
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(fields_[i]);
    }
    return out;
}

}  // namespace mud
