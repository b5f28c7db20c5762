#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trapcount/caps.hpp"

namespace trapcount {

using BigInt = boost::multiprecision::cpp_int;

struct Atom {
    std::string name;

    friend auto operator<=>(const Atom&, const Atom&) = default;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Ground disjunctive rule  h1 | ... | hk :- p1, ..., pm, not n1, ..., not nj.
/// A fact has both bodies empty; a constraint has an empty head.
struct Rule {
    std::vector<Atom> head;
    std::vector<Atom> pos_body;
    std::vector<Atom> neg_body;

    bool is_fact() const noexcept { return pos_body.empty() && neg_body.empty(); }
    bool is_constraint() const noexcept { return head.empty(); }

    friend bool operator==(const Rule&, const Rule&) = default;
};

class AspProgram {
public:
    AspProgram() = default;
    explicit AspProgram(std::vector<Rule> rules) : rules_(std::move(rules)) {}

    void add(Rule r) { rules_.push_back(std::move(r)); }
    /// Appends the rules of other (program union, order preserved).
    void append(const AspProgram& other);

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }
    bool empty() const noexcept { return rules_.empty(); }
    /// Every atom occurring in some rule, sorted.
    std::vector<Atom> atoms() const;

    friend bool operator==(const AspProgram&, const AspProgram&) = default;

private:
    std::vector<Rule> rules_;
};

AspProgram operator+(AspProgram lhs, const AspProgram& rhs);

using Interpretation = std::set<Atom>;

/// (H(r) u B-(r)) n M nonempty, or B+(r) \ M nonempty.
bool satisfies(const Interpretation& m, const Rule& r);
bool satisfies(const Interpretation& m, const AspProgram& p);

/// Gelfond-Lifschitz reduct: drop rules whose negative body meets M and
/// strip the negative bodies of the rest.
AspProgram gl_reduct(const AspProgram& p, const Interpretation& m);

/// M satisfies P and no proper subset of M satisfies P^M. The atoms of P and
/// M together must number at most 64.
bool is_answer_set(const AspProgram& p, const Interpretation& m);

/// Every answer set of P, in lexicographic order. Throws CapExceeded when P
/// has more than caps.asp_atoms atoms.
std::vector<Interpretation> answer_sets(const AspProgram& p, const Caps& caps = {});

/// |{ M n I : M answer set of P }|.
BigInt projected_count(const AspProgram& p, const std::set<Atom>& projection, const Caps& caps = {});

}  // namespace trapcount
