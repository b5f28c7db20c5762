#pragma once

// Brute-force oracles and random instance generators shared by the tests.
// The oracles avoid the library's Kleene evaluation and compiled update
// functions: trap spaces are checked on the asynchronous state transition
// graph, and functions are evaluated with eval2 on the raw expressions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trapcount/bnet.hpp"
#include "trapcount/cnf.hpp"
#include "trapcount/expr.hpp"
#include "trapcount/network.hpp"
#include "trapcount/normal_form.hpp"
#include "trapcount/trivalue.hpp"

namespace oracle {

using namespace trapcount;

inline std::map<std::string, bool, std::less<>> assignment(const BooleanNetwork& f, std::uint64_t bits) {
    std::map<std::string, bool, std::less<>> out;
    for (std::size_t v = 0; v < f.size(); ++v) out[f.name(v)] = (bits >> v) & 1U;
    return out;
}

inline bool in_subspace(const std::vector<Tri>& m, std::uint64_t bits) {
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] == Tri::Star) continue;
        if (((bits >> v) & 1U) != (m[v] == Tri::One)) return false;
    }
    return true;
}

// No asynchronous transition leaves S[m].
inline bool is_trap(const BooleanNetwork& f, const std::vector<Tri>& m) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << f.size()); ++s) {
        if (!in_subspace(m, s)) continue;
        const auto a = assignment(f, s);
        for (std::size_t v = 0; v < f.size(); ++v) {
            const bool next = eval2(f.function(v), a);
            if (next != static_cast<bool>((s >> v) & 1U) && !in_subspace(m, s ^ (std::uint64_t{1} << v))) return false;
        }
    }
    return true;
}

inline std::vector<std::vector<Tri>> all_subspaces(std::size_t n) {
    std::vector<std::vector<Tri>> out{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Tri>> next;
        for (const auto& m : out) {
            for (Tri t : {Tri::Zero, Tri::One, Tri::Star}) {
                auto copy = m;
                copy.push_back(t);
                next.push_back(std::move(copy));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline bool below(const std::vector<Tri>& a, const std::vector<Tri>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i] && b[i] != Tri::Star) return false;
    }
    return true;
}

inline std::set<Subspace> trap_spaces(const BooleanNetwork& f) {
    std::set<Subspace> out;
    for (auto& m : all_subspaces(f.size())) {
        if (is_trap(f, m)) out.insert(Subspace(m));
    }
    return out;
}

inline std::set<Subspace> minimal_trap_spaces(const BooleanNetwork& f) {
    const auto traps = trap_spaces(f);
    std::set<Subspace> out;
    for (const auto& m : traps) {
        const std::vector<Tri> mv(m.values().begin(), m.values().end());
        bool minimal = true;
        for (const auto& o : traps) {
            const std::vector<Tri> ov(o.values().begin(), o.values().end());
            if (ov != mv && below(ov, mv)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.insert(m);
    }
    return out;
}

inline std::set<State> fixed_points(const BooleanNetwork& f) {
    std::set<State> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << f.size()); ++s) {
        const auto a = assignment(f, s);
        bool fixed = true;
        for (std::size_t v = 0; v < f.size() && fixed; ++v) {
            fixed = eval2(f.function(v), a) == static_cast<bool>((s >> v) & 1U);
        }
        if (!fixed) continue;
        std::vector<bool> bits(f.size());
        for (std::size_t v = 0; v < f.size(); ++v) bits[v] = (s >> v) & 1U;
        out.insert(State(bits));
    }
    return out;
}

inline bool satisfies(const Phenotype& beta, const BooleanNetwork& f, const Subspace& m) {
    for (const auto& t : beta.traits) {
        if (m[f.require(t.variable)] != t.value) return false;
    }
    return true;
}

// Truth-table model count projected on the support; every variable enumerated.
inline std::uint64_t projected_models(const CnfFormula& cnf) {
    std::set<std::vector<bool>> seen;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << cnf.num_vars); ++a) {
        bool ok = true;
        for (const auto& c : cnf.clauses) {
            bool sat = false;
            for (int lit : c) {
                const bool value = (a >> (std::abs(lit) - 1)) & 1U;
                if (value == (lit > 0)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::vector<bool> key;
        for (auto v : cnf.support) key.push_back((a >> (v - 1)) & 1U);
        seen.insert(key);
    }
    return seen.size();
}

// Attractors of the asynchronous graph as terminal strongly connected
// components, returned as sorted state sets. Small n only.
inline std::vector<std::set<std::uint64_t>> attractors(const BooleanNetwork& f) {
    const std::uint64_t total = std::uint64_t{1} << f.size();
    std::vector<std::set<std::uint64_t>> reach(total);
    for (std::uint64_t s = 0; s < total; ++s) {
        std::vector<std::uint64_t> stack{s};
        reach[s].insert(s);
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            const auto a = assignment(f, u);
            for (std::size_t v = 0; v < f.size(); ++v) {
                const bool next = eval2(f.function(v), a);
                const auto w = next ? (u | (std::uint64_t{1} << v)) : (u & ~(std::uint64_t{1} << v));
                if (reach[s].insert(w).second) stack.push_back(w);
            }
        }
    }
    std::set<std::set<std::uint64_t>> out;
    for (std::uint64_t s = 0; s < total; ++s) {
        bool terminal = true;
        for (auto t : reach[s]) {
            if (!reach[t].count(s)) {
                terminal = false;
                break;
            }
        }
        if (terminal) out.insert(reach[s]);
    }
    return {out.begin(), out.end()};
}

// Random instance generators.

inline Expr random_expr(std::mt19937_64& rng, const std::vector<std::string>& names, int depth) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(names.size()) - 1);
    std::uniform_int_distribution<int> kind(0, 9);
    if (depth <= 0) {
        const int k = kind(rng);
        if (k == 0) return Expr::constant(rng() & 1U);
        Expr x = Expr::var(names[pick(rng)]);
        return k < 5 ? Expr::negate(x) : x;
    }
    const int k = kind(rng);
    if (k < 3) return random_expr(rng, names, 0);
    if (k == 3) return Expr::negate(random_expr(rng, names, depth - 1));
    std::vector<Expr> ops;
    const int arity = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < arity; ++i) ops.push_back(random_expr(rng, names, depth - 1));
    return k < 7 ? Expr::conj(std::move(ops)) : Expr::disj(std::move(ops));
}

inline std::vector<std::string> variable_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

inline BooleanNetwork random_network(std::mt19937_64& rng, std::size_t n, int depth = 2) {
    const auto names = variable_names(n);
    std::vector<std::pair<std::string, Expr>> fs;
    for (const auto& name : names) fs.emplace_back(name, random_expr(rng, names, depth));
    return BooleanNetwork(std::move(fs));
}

// Both f_v and its negation have safe NNFs after constant folding.
inline bool is_safe_network(const BooleanNetwork& f) {
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (!is_safe(fold_constants(to_nnf(f.function(v))))) return false;
        if (!is_safe(fold_constants(to_nnf(Expr::negate(f.function(v)))))) return false;
    }
    return true;
}

inline BooleanNetwork random_safe_network(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        auto f = random_network(rng, n);
        if (is_safe_network(f)) return f;
    }
}

inline Phenotype random_phenotype(std::mt19937_64& rng, const BooleanNetwork& f, bool allow_star) {
    Phenotype beta;
    for (std::size_t v = 0; v < f.size(); ++v) {
        const auto r = rng() % 4;
        if (r == 0) beta.traits.push_back({f.name(v), Tri::Zero});
        if (r == 1) beta.traits.push_back({f.name(v), Tri::One});
        if (r == 2 && allow_star && rng() % 2) beta.traits.push_back({f.name(v), Tri::Star});
    }
    return beta;
}

inline Phenotype without_stars(const Phenotype& beta) {
    Phenotype out;
    for (const auto& t : beta.traits) {
        if (t.value != Tri::Star) out.traits.push_back(t);
    }
    return out;
}

// Number of perturbations in 3^X whose network has a minimal trap space
// (or fixed point) satisfying beta, by direct substitution.
inline std::uint64_t perturbation_count(const BooleanNetwork& f, const Phenotype& beta, const PerturbationSet& x,
                                        bool fix) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < x.size(); ++i) total *= 3;
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::pair<std::string, Expr>> fs;
        for (std::size_t v = 0; v < f.size(); ++v) fs.emplace_back(f.name(v), f.function(v));
        std::uint64_t c = code;
        for (const auto& name : x.names) {
            const auto digit = c % 3;
            c /= 3;
            if (digit != 0) fs[f.require(name)].second = Expr::constant(digit == 2);
        }
        const BooleanNetwork g(fs);
        bool hit = false;
        if (fix) {
            for (const auto& s : fixed_points(g)) hit |= satisfies(beta, g, Subspace::from_state(s));
        } else {
            for (const auto& m : minimal_trap_spaces(g)) hit |= satisfies(beta, g, m);
        }
        count += hit;
    }
    return count;
}

}  // namespace oracle
