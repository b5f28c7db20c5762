#include "trapcount/asp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <unordered_set>

#include "trapcount/error.hpp"

namespace trapcount {

void AspProgram::append(const AspProgram& other) {
    rules_.insert(rules_.end(), other.rules_.begin(), other.rules_.end());
}

std::vector<Atom> AspProgram::atoms() const {
    std::set<Atom> all;
    for (const auto& r : rules_) {
        all.insert(r.head.begin(), r.head.end());
        all.insert(r.pos_body.begin(), r.pos_body.end());
        all.insert(r.neg_body.begin(), r.neg_body.end());
    }
    return {all.begin(), all.end()};
}

AspProgram operator+(AspProgram lhs, const AspProgram& rhs) {
    lhs.append(rhs);
    return lhs;
}

namespace {

bool any_in(const std::vector<Atom>& atoms, const Interpretation& m) {
    return std::any_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return m.count(a) != 0; });
}

using Mask = std::uint64_t;

// A rule as a clause over atom bits: satisfied iff some atom of `pos` is
// true or some atom of `neg` is false.
struct Clause {
    Mask pos;
    Mask neg;
};

// Exhaustive DPLL over at most 64 atoms with unit propagation. Exact: it
// only prunes assignments that already falsify a clause.
class ClauseSearch {
public:
    ClauseSearch(std::vector<Clause> clauses, Mask universe) : universe_(universe) {
        // A clause with an atom on both sides always holds.
        for (const auto& c : clauses) {
            if ((c.pos & c.neg) == 0) clauses_.push_back(c);
        }
    }

    template <typename Visit>
    void enumerate(Mask t, Mask f, Visit&& visit) const {
        if (!propagate(t, f)) return;
        const Mask open = universe_ & ~(t | f);
        if (open == 0) {
            visit(t);
            return;
        }
        const Mask bit = open & (~open + 1);
        enumerate(t, f | bit, visit);
        enumerate(t | bit, f, visit);
    }

    bool satisfiable(Mask t, Mask f) const {
        if (!propagate(t, f)) return false;
        const Mask open = universe_ & ~(t | f);
        if (open == 0) return true;
        const Mask bit = open & (~open + 1);
        return satisfiable(t, f | bit) || satisfiable(t | bit, f);
    }

private:
    bool propagate(Mask& t, Mask& f) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : clauses_) {
                if ((c.pos & t) || (c.neg & f)) continue;
                const Mask open = (c.pos | c.neg) & ~(t | f);
                if (open == 0) return false;
                if ((open & (open - 1)) == 0) {
                    if (open & c.pos) t |= open;
                    else f |= open;
                    changed = true;
                }
            }
        }
        return true;
    }

    std::vector<Clause> clauses_;
    Mask universe_;
};

// Program compiled against a sorted atom table.
struct Indexed {
    std::vector<Atom> atoms;
    std::map<Atom, unsigned> index;
    struct Row {
        Mask head, pos, neg;
    };
    std::vector<Row> rows;

    Mask universe() const { return atoms.size() == 64 ? ~Mask{0} : (Mask{1} << atoms.size()) - 1; }

    Mask mask_of(const std::vector<Atom>& list) const {
        Mask m = 0;
        for (const auto& a : list) m |= Mask{1} << index.at(a);
        return m;
    }

    Mask mask_of(const Interpretation& set) const {
        Mask m = 0;
        for (const auto& a : set) m |= Mask{1} << index.at(a);
        return m;
    }

    Interpretation unpack(Mask m) const {
        Interpretation out;
        for (; m != 0; m &= m - 1) out.insert(atoms[static_cast<std::size_t>(std::countr_zero(m))]);
        return out;
    }
};

Indexed index_program(const AspProgram& p, std::vector<Atom> extra, std::size_t cap) {
    Indexed ix;
    auto atoms = p.atoms();
    atoms.insert(atoms.end(), extra.begin(), extra.end());
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    if (atoms.size() > cap || atoms.size() > 64) {
        throw CapExceeded("answer-set oracle infeasible: " + std::to_string(atoms.size()) +
                          " atoms exceeds the cap of " + std::to_string(std::min<std::size_t>(cap, 64)));
    }
    ix.atoms = std::move(atoms);
    for (unsigned i = 0; i < ix.atoms.size(); ++i) ix.index.emplace(ix.atoms[i], i);
    for (const auto& r : p.rules()) {
        ix.rows.push_back({ix.mask_of(r.head), ix.mask_of(r.pos_body), ix.mask_of(r.neg_body)});
    }
    return ix;
}

// No M' strictly inside M satisfies P^M.
bool minimal_for_reduct(const Indexed& ix, Mask m) {
    std::vector<Clause> reduct;
    for (const auto& row : ix.rows) {
        if (row.neg & m) continue;
        reduct.push_back({row.head, row.pos});
    }
    // Some atom of M must be dropped.
    reduct.push_back({0, m});
    const ClauseSearch search(std::move(reduct), ix.universe());
    return !search.satisfiable(0, ix.universe() & ~m);
}

std::vector<Mask> answer_set_masks(const Indexed& ix) {
    std::vector<Clause> clauses;
    clauses.reserve(ix.rows.size());
    for (const auto& row : ix.rows) clauses.push_back({row.head | row.neg, row.pos});
    const ClauseSearch search(std::move(clauses), ix.universe());
    std::vector<Mask> out;
    search.enumerate(0, 0, [&](Mask m) {
        if (minimal_for_reduct(ix, m)) out.push_back(m);
    });
    return out;
}

}  // namespace

bool satisfies(const Interpretation& m, const Rule& r) {
    if (any_in(r.head, m) || any_in(r.neg_body, m)) return true;
    return std::any_of(r.pos_body.begin(), r.pos_body.end(), [&](const Atom& a) { return m.count(a) == 0; });
}

bool satisfies(const Interpretation& m, const AspProgram& p) {
    return std::all_of(p.rules().begin(), p.rules().end(), [&](const Rule& r) { return satisfies(m, r); });
}

AspProgram gl_reduct(const AspProgram& p, const Interpretation& m) {
    AspProgram out;
    for (const auto& r : p.rules()) {
        if (any_in(r.neg_body, m)) continue;
        out.add(Rule{r.head, r.pos_body, {}});
    }
    return out;
}

bool is_answer_set(const AspProgram& p, const Interpretation& m) {
    if (!satisfies(m, p)) return false;
    const auto ix = index_program(p, {m.begin(), m.end()}, 64);
    return minimal_for_reduct(ix, ix.mask_of(m));
}

std::vector<Interpretation> answer_sets(const AspProgram& p, const Caps& caps) {
    const auto ix = index_program(p, {}, caps.asp_atoms);
    std::vector<Interpretation> out;
    for (Mask m : answer_set_masks(ix)) out.push_back(ix.unpack(m));
    std::sort(out.begin(), out.end());
    return out;
}

BigInt projected_count(const AspProgram& p, const std::set<Atom>& projection, const Caps& caps) {
    const auto ix = index_program(p, {}, caps.asp_atoms);
    Mask keep = 0;
    for (const auto& a : projection) {
        if (auto it = ix.index.find(a); it != ix.index.end()) keep |= Mask{1} << it->second;
    }
    std::unordered_set<Mask> seen;
    for (Mask m : answer_set_masks(ix)) seen.insert(m & keep);
    return BigInt(seen.size());
}

}  // namespace trapcount
