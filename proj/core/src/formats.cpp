#include "mud/formats.hpp"

#include <istream>
#include <sstream>

#include "mud/error.hpp"

namespace mud {

namespace {

std::int64_t parse_i64(const std::string& tok, int line) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        fail_at_line(Errc::parse, line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) {
        fail_at_line(Errc::parse, line, "trailing characters in '" + tok + "'");
    }
    return v;
}

// Line-oriented record reader: fixed field count per nonempty line,
// '#' starts a comment.
template <typename RowFn>
void for_each_row(std::istream& in, std::size_t fields, RowFn&& fn) {
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream row(raw);
        std::vector<std::string> tok;
        std::string t;
        while (row >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != fields) {
            fail_at_line(Errc::parse, line,
                         "expected " + std::to_string(fields) + " fields, got " +
                             std::to_string(tok.size()));
        }
        fn(tok, line);
    }
}

}  // namespace

std::vector<Symbol> parse_int_symbols(std::istream& in) {
    std::vector<Symbol> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream row(raw);
        std::string tok;
        while (row >> tok) out.push_back(Symbol(parse_i64(tok, line)));
    }
    return out;
}

std::vector<Symbol> parse_setparity_records(std::istream& in) {
    std::vector<Symbol> out;
    for_each_row(in, 2, [&](const std::vector<std::string>& tok, int line) {
        out.push_back(Symbol{parse_i64(tok[0], line), parse_i64(tok[1], line)});
    });
    return out;
}

std::vector<Symbol> parse_symindex_records(std::istream& in) {
    std::vector<Symbol> out;
    for_each_row(in, 4, [&](const std::vector<std::string>& tok, int line) {
        std::int64_t side;
        if (tok[0] == "a") {
            side = 0;
        } else if (tok[0] == "b") {
            side = 1;
        } else {
            fail_at_line(Errc::parse, line, "side must be 'a' or 'b', got '" + tok[0] + "'");
        }
        out.push_back(Symbol{side, parse_i64(tok[1], line), parse_i64(tok[2], line),
                             parse_i64(tok[3], line)});
    });
    return out;
}

std::vector<Symbol> parse_dfa_word(std::istream& in, const TableDFA& dfa) {
    std::vector<Symbol> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream row(raw);
        std::string tok;
        while (row >> tok) {
            int a = dfa.symbol_index(tok);
            if (a < 0) {
                fail_at_line(Errc::parse, line, "'" + tok + "' is not in the alphabet");
            }
            out.push_back(Symbol(a));
        }
    }
    return out;
}

std::string format_setparity_records(const std::vector<Symbol>& records) {
    std::ostringstream out;
    for (const auto& r : records) out << r.field(0) << ' ' << r.field(1) << '\n';
    return out.str();
}

std::string format_symindex_records(const std::vector<Symbol>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        out << (r.field(0) == 0 ? 'a' : 'b') << ' ' << r.field(1) << ' ' << r.field(2)
            << ' ' << r.field(3) << '\n';
    }
    return out.str();
}

}  // namespace mud
