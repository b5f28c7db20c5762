#include "trapcount/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "trapcount/error.hpp"

namespace trapcount {

void CnfFormula::add_clause(std::vector<int> literals) {
    for (int lit : literals) {
        if (lit == 0 || static_cast<std::uint32_t>(std::abs(lit)) > num_vars) {
            throw Error("literal " + std::to_string(lit) + " out of range 1.." + std::to_string(num_vars));
        }
    }
    std::sort(literals.begin(), literals.end(), [](int a, int b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
    });
    literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
    for (std::size_t i = 1; i < literals.size(); ++i) {
        if (literals[i] == -literals[i - 1]) return;
    }
    clauses.push_back(std::move(literals));
}

std::string render_dimacs(const CnfFormula& cnf) {
    std::string out = "p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
    for (std::size_t i = 0; i < cnf.support.size(); i += 10) {
        out += "c ind";
        for (std::size_t j = i; j < std::min(i + 10, cnf.support.size()); ++j) {
            out += " " + std::to_string(cnf.support[j]);
        }
        out += " 0\n";
    }
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) out += std::to_string(lit) + " ";
        out += "0\n";
    }
    return out;
}

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula cnf;
    bool header = false;
    std::vector<int> pending;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream words(line);
        std::string first;
        if (!(words >> first)) continue;
        if (first == "c") {
            std::string tag;
            if (!(words >> tag) || tag != "ind") continue;
            long v = 0;
            while (words >> v && v != 0) {
                if (v < 0) throw ParseError("negative index in 'c ind' line", number, 1);
                cnf.support.push_back(static_cast<std::uint32_t>(v));
            }
            continue;
        }
        if (first == "p") {
            std::string fmt;
            long vars = -1;
            long count = -1;
            if (header || !(words >> fmt >> vars >> count) || fmt != "cnf" || vars < 0 || count < 0) {
                throw ParseError("malformed problem line", number, 1);
            }
            header = true;
            cnf.num_vars = static_cast<std::uint32_t>(vars);
            continue;
        }
        if (!header) throw ParseError("clause before 'p cnf' header", number, 1);
        std::istringstream lits(line);
        long lit = 0;
        while (lits >> lit) {
            if (lit == 0) {
                // Keep empty clauses: they make the formula deliberately UNSAT.
                if (pending.empty()) cnf.clauses.emplace_back();
                else cnf.add_clause(std::move(pending));
                pending.clear();
            } else {
                if (static_cast<std::uint32_t>(std::labs(lit)) > cnf.num_vars) {
                    throw ParseError("literal " + std::to_string(lit) + " exceeds variable count", number, 1);
                }
                pending.push_back(static_cast<int>(lit));
            }
        }
        if (!lits.eof()) throw ParseError("non-numeric token in clause", number, 1);
    }
    if (!header) throw ParseError("missing 'p cnf' header");
    if (!pending.empty()) throw ParseError("last clause is not zero-terminated");
    for (auto v : cnf.support) {
        if (v == 0 || v > cnf.num_vars) throw ParseError("'c ind' index out of range");
    }
    return cnf;
}

}  // namespace trapcount
