#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trapcount {

/// CNF over variables 1..num_vars with DIMACS-style signed literals. The
/// support lists the variables projected counts are taken over.
struct CnfFormula {
    std::uint32_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::uint32_t> support;

    std::uint32_t new_var() { return ++num_vars; }

    /// Adds a clause after merging duplicate literals; tautologies are
    /// dropped. Throws trapcount::Error on a zero or out-of-range literal.
    void add_clause(std::vector<int> literals);

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// "p cnf V C", then "c ind ... 0" lines (at most ten indices each), then
/// one zero-terminated clause per line.
std::string render_dimacs(const CnfFormula& cnf);

/// Reads DIMACS CNF including "c ind" support lines. Throws ParseError.
CnfFormula parse_dimacs(std::string_view text);

}  // namespace trapcount
