#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trapcount/asp.hpp"
#include "trapcount/bnet.hpp"
#include "trapcount/caps.hpp"
#include "trapcount/cnf.hpp"
#include "trapcount/network.hpp"

namespace trapcount {

enum class Target { MinimalTrapSpaces, FixedPoints };

// Atom naming: p_<v>, n_<v>, aux_<k>.
Atom positive_atom(std::string_view variable);
Atom negative_atom(std::string_view variable);

// Helper variables of the perturbed network.
std::string knockout_variable(std::string_view v);       // <v>__k
std::string overexpression_variable(std::string_view v); // <v>__o

/// Trap-space encoding. For every variable in declaration order:
///   p_v | n_v.      p_v :- gamma(NNF(f_v)).      n_v :- gamma(NNF(!f_v)).
/// where gamma maps literals to p/n atoms, conjunctions to rule bodies and
/// each disjunction to a fresh aux_k (k counts from 1 across the whole
/// program) defined by one rule per disjunct. An unsafe formula is replaced
/// by its DNF. Throws CapExceeded if that DNF exceeds caps.dnf_terms.
AspProgram encode_tsconj(const BooleanNetwork& f, const Caps& caps = {});

/// Fixed-point encoding: tsconj rules without the safeness fallback, plus
/// the constraint  :- p_v, n_v.  for every variable.
AspProgram encode_fasp(const BooleanNetwork& f);

/// Two constraints per trait:
///   v = 1:  :- not p_v.  :- n_v.
///   v = 0:  :- p_v.      :- not n_v.
///   v = *:  :- not p_v.  :- not n_v.
/// Throws trapcount::Error for a * trait with Target::FixedPoints or a trait
/// over a variable not in f.
AspProgram encode_phenotype(const Phenotype& beta, Target target, const BooleanNetwork& f);

/// Network g with, for each v in X, helpers v__k, v__o and
///   g_v = !v__k & (v__o | f_v),   g_{v__k} = v__k,   g_{v__o} = v__o & !v__k.
/// Helpers follow the original variables, in X order. Throws
/// trapcount::Error when X is not a subset of var(f) or a helper name is
/// already taken.
BooleanNetwork perturb_transform(const BooleanNetwork& f, const PerturbationSet& x);

struct ProjectionSet {
    std::vector<std::string> sources;  // v__k, v__o for each v in X
    std::vector<Atom> atoms;           // p/n atoms of every source, 4|X| in total
};

ProjectionSet projection_atoms(const PerturbationSet& x);

/// Subspace for an answer set of a tsconj/fASP program:
/// p_v only -> 1, n_v only -> 0, both -> *. Empty if some variable has
/// neither atom.
std::optional<Subspace> decode_subspace(const BooleanNetwork& f, const Interpretation& m);

/// CNF of the conjunction of (v <-> f_v) with one Tseitin variable per
/// internal node, defined by full equivalences. Variable i+1 is network
/// variable i; the support is exactly the network variables. Traits of beta
/// become unit clauses. Throws trapcount::Error on a * trait or an unknown
/// trait variable.
CnfFormula encode_fix_cnf(const BooleanNetwork& f, const Phenotype& beta = {});

/// encode_fix_cnf of perturb_transform(f, x) with the support narrowed to
/// the helper variables v__k, v__o; its projected count is the number of
/// perturbations admitting a fixed point that satisfies beta.
CnfFormula encode_perturbed_fix_cnf(const BooleanNetwork& f, const PerturbationSet& x, const Phenotype& beta = {});

/// clingo-compatible text: ';' for head disjunction, ':-' and 'not ',
/// one rule per line, then "#show a/0." for every atom in show.
std::string render_asp(const AspProgram& p, std::span<const Atom> show = {});

}  // namespace trapcount
