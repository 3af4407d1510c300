#include "mud/dfa_file.hpp"

#include <fstream>
#include <sstream>

#include "mud/error.hpp"

namespace mud {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

struct Parser {
    TableDFA dfa;
    bool have_states = false, have_alphabet = false, have_n = false;
    std::string section;  // "delta" or "eta" while inside a row section
    std::vector<std::vector<char>> delta_seen;
    std::vector<char> eta_seen;

    void begin_tables(int line) {
        if (!have_states || !have_alphabet) {
            fail_at_line(Errc::parse, line,
                         "states and alphabet must be declared before rows");
        }
        if (delta_seen.empty()) {
            dfa.delta.assign(dfa.state_count(),
                             std::vector<int>(dfa.alphabet_size(), -1));
            delta_seen.assign(dfa.state_count(),
                              std::vector<char>(dfa.alphabet_size(), 0));
            dfa.eta.assign(dfa.state_count(), -1);
            eta_seen.assign(dfa.state_count(), 0);
        }
    }

    int state_at(const std::string& name, int line) {
        int q = dfa.state_index(name);
        if (q < 0) fail_at_line(Errc::parse, line, "unknown state '" + name + "'");
        return q;
    }

    int symbol_at(const std::string& tok, int line) {
        int a = dfa.symbol_index(tok);
        if (a < 0) fail_at_line(Errc::parse, line, "unknown symbol '" + tok + "'");
        return a;
    }

    void delta_row(const std::vector<std::string>& tok, int line) {
        if (tok.size() != 4 || tok[2] != "->") {
            fail_at_line(Errc::parse, line, "expected 'state symbol -> state'");
        }
        int q = state_at(tok[0], line);
        int a = symbol_at(tok[1], line);
        if (delta_seen[q][a]) {
            fail_at_line(Errc::parse, line, "duplicate transition row");
        }
        delta_seen[q][a] = 1;
        dfa.delta[q][a] = state_at(tok[3], line);
    }

    void eta_row(const std::vector<std::string>& tok, int line) {
        if (tok.size() != 3 || tok[1] != "->") {
            fail_at_line(Errc::parse, line, "expected 'state -> symbol'");
        }
        int q = state_at(tok[0], line);
        if (eta_seen[q]) fail_at_line(Errc::parse, line, "duplicate output row");
        eta_seen[q] = 1;
        dfa.eta[q] = symbol_at(tok[2], line);
    }

    void header(const std::string& key, std::vector<std::string> rest, int line) {
        section.clear();
        if (key == "states") {
            if (have_states) fail_at_line(Errc::parse, line, "duplicate states section");
            if (rest.empty()) fail_at_line(Errc::parse, line, "states list is empty");
            dfa.states = std::move(rest);
            have_states = true;
        } else if (key == "alphabet") {
            if (have_alphabet) {
                fail_at_line(Errc::parse, line, "duplicate alphabet section");
            }
            if (rest.empty()) fail_at_line(Errc::parse, line, "alphabet list is empty");
            dfa.alphabet = std::move(rest);
            have_alphabet = true;
        } else if (key == "n") {
            if (rest.size() != 1) fail_at_line(Errc::parse, line, "n takes one value");
            try {
                dfa.n = std::stoull(rest[0]);
            } catch (const std::exception&) {
                fail_at_line(Errc::parse, line, "n must be a nonnegative integer");
            }
            have_n = true;
        } else if (key == "delta" || key == "eta") {
            if (!rest.empty()) {
                fail_at_line(Errc::parse, line, key + ": opens a row section");
            }
            begin_tables(line);
            section = key;
        } else {
            fail_at_line(Errc::parse, line, "unknown section '" + key + "'");
        }
    }

    void line_in(const std::string& raw, int line) {
        auto tok = tokens_of(strip_comment(raw));
        if (tok.empty()) return;
        if (tok[0].back() == ':') {
            std::string key = tok[0].substr(0, tok[0].size() - 1);
            header(key, {tok.begin() + 1, tok.end()}, line);
            return;
        }
        if (section == "delta") {
            delta_row(tok, line);
        } else if (section == "eta") {
            eta_row(tok, line);
        } else {
            fail_at_line(Errc::parse, line, "row outside a delta/eta section");
        }
    }

    TableDFA finish(int last_line) {
        if (!have_states) fail_at_line(Errc::parse, last_line, "missing states:");
        if (!have_alphabet) fail_at_line(Errc::parse, last_line, "missing alphabet:");
        if (!have_n) fail_at_line(Errc::parse, last_line, "missing n:");
        if (delta_seen.empty()) fail_at_line(Errc::parse, last_line, "missing delta:");
        for (std::size_t q = 0; q < dfa.state_count(); ++q) {
            for (std::size_t a = 0; a < dfa.alphabet_size(); ++a) {
                if (!delta_seen[q][a]) {
                    fail_at_line(Errc::parse, last_line,
                                 "missing transition for state '" + dfa.states[q] +
                                     "' on symbol '" + dfa.alphabet[a] + "'");
                }
            }
        }
        dfa.validate();
        return std::move(dfa);
    }
};

}  // namespace

TableDFA parse_dfa(std::istream& in) {
    Parser parser;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        parser.line_in(raw, line);
    }
    return parser.finish(line == 0 ? 1 : line);
}

TableDFA parse_dfa_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse, "cannot open dfa file '" + path + "'");
    return parse_dfa(in);
}

std::string format_dfa(const TableDFA& dfa) {
    std::ostringstream out;
    out << "states:";
    for (const auto& s : dfa.states) out << ' ' << s;
    out << "\nalphabet:";
    for (const auto& a : dfa.alphabet) out << ' ' << a;
    out << "\nn: " << dfa.n << "\ndelta:\n";
    for (std::size_t q = 0; q < dfa.state_count(); ++q) {
        for (std::size_t a = 0; a < dfa.alphabet_size(); ++a) {
            out << dfa.states[q] << ' ' << dfa.alphabet[a] << " -> "
                << dfa.states[dfa.delta[q][a]] << '\n';
        }
    }
    out << "eta:\n";
    for (std::size_t q = 0; q < dfa.state_count(); ++q) {
        if (dfa.eta[q] >= 0) {
            out << dfa.states[q] << " -> " << dfa.alphabet[dfa.eta[q]] << '\n';
        }
    }
    return out.str();
}

}  // namespace mud
