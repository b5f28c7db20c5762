#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "trapcount/network.hpp"

namespace trapcount {

/// Parses the .bnet format: one "name, expression" per line, '#' comments,
/// optional "targets, factors" header. Operators by precedence: '!', '&',
/// '|'; constants 0/1/true/false. Throws ParseError with line and column
/// on syntax errors, duplicate variables and undeclared references.
BooleanNetwork parse_bnet(std::string_view text);

/// Canonical .bnet text; lines joined by '\n' with no trailing newline.
std::string render_bnet(const BooleanNetwork& f);

/// Target value constraint v <-> e with e in {0, 1, *}.
struct Trait {
    std::string variable;
    Tri value;

    friend bool operator==(const Trait&, const Trait&) = default;
};

/// Conjunction of traits, at most one per variable. Empty is a tautology.
struct Phenotype {
    std::vector<Trait> traits;

    bool empty() const noexcept { return traits.empty(); }
    bool has_star() const noexcept;
    /// Throws trapcount::Error if a trait names a variable not in f.
    void validate(const BooleanNetwork& f) const;
    /// m(v) = e for every trait; a * trait holds only where m(v) = *.
    bool satisfied_by(const BooleanNetwork& f, const Subspace& m) const;
    bool satisfied_by(const BooleanNetwork& f, const State& s) const;

    friend bool operator==(const Phenotype&, const Phenotype&) = default;
};

/// Lines "name = 0|1|*"; blank lines and '#' comments ignored.
Phenotype parse_phenotype(std::string_view text);

/// Perturbable variables X, in file order.
struct PerturbationSet {
    std::vector<std::string> names;

    std::size_t size() const noexcept { return names.size(); }
    bool empty() const noexcept { return names.empty(); }
    /// Throws trapcount::Error if a name is not a variable of f.
    void validate(const BooleanNetwork& f) const;

    friend bool operator==(const PerturbationSet&, const PerturbationSet&) = default;
};

/// One variable name per line; blank lines and '#' comments ignored.
PerturbationSet parse_perturbables(std::string_view text);

/// Reads a whole file; throws trapcount::Error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace trapcount
