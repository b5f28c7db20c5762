#pragma once

// Reads back the ground ASP subset the encoder writes: disjunctive heads
// joined by ';', bodies with 'not', constraints, and '#show a/0.' lines.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trapcount/asp.hpp"

namespace asp_text {

struct Parsed {
    trapcount::AspProgram program;
    std::vector<trapcount::Atom> shown;
};

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, std::string_view sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto at = s.find(sep, start);
        out.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
        if (at == std::string_view::npos) return out;
        start = at + sep.size();
    }
}

inline bool is_atom(const std::string& a) {
    if (a.empty()) return false;
    for (char c : a) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

inline trapcount::Atom atom(const std::string& a) {
    if (!is_atom(a)) throw std::runtime_error("bad atom '" + a + "'");
    return trapcount::Atom{a};
}

inline Parsed read(std::string_view text) {
    Parsed out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty() || line[0] == '%') continue;
        if (line.back() != '.') throw std::runtime_error("missing terminator: " + line);
        const std::string stmt = line.substr(0, line.size() - 1);
        if (stmt.rfind("#show ", 0) == 0) {
            const std::string sig = trim(stmt.substr(6));
            if (sig.size() < 3 || sig.substr(sig.size() - 2) != "/0") throw std::runtime_error("bad #show");
            out.shown.push_back(atom(sig.substr(0, sig.size() - 2)));
            continue;
        }
        trapcount::Rule rule;
        const auto arrow = stmt.find(":-");
        const std::string head = trim(stmt.substr(0, arrow));
        if (!head.empty()) {
            for (const auto& h : split(head, ";")) rule.head.push_back(atom(h));
        }
        if (arrow != std::string::npos) {
            for (const auto& lit : split(std::string_view(stmt).substr(arrow + 2), ",")) {
                if (lit.rfind("not ", 0) == 0) {
                    rule.neg_body.push_back(atom(trim(lit.substr(4))));
                } else {
                    rule.pos_body.push_back(atom(lit));
                }
            }
        }
        if (rule.head.empty() && arrow == std::string::npos) throw std::runtime_error("empty rule");
        out.program.add(std::move(rule));
    }
    return out;
}

}  // namespace asp_text
