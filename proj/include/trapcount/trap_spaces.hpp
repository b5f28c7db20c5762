#pragma once

#include <vector>

#include "trapcount/caps.hpp"
#include "trapcount/network.hpp"

namespace trapcount {

/// m is a trap space iff m(f_v) <=_s m(v) for every variable v, where m(f_v)
/// is the set of values f_v takes on S[m]. The Kleene value is used when it
/// is 0 or 1; a Kleene * on a fixed variable is resolved over the states.
/// Throws trapcount::Error on a length mismatch.
bool is_trap_space(const BooleanNetwork& f, const Subspace& m);

/// True iff m is a trap space and no trap space lies strictly below it in
/// <=_s. Enumerates the refinements of m, so the number of free variables of
/// m is bounded by caps.subspace_vars.
bool is_minimal_trap_space(const BooleanNetwork& f, const Subspace& m, const Caps& caps = {});

/// True iff m is star-free and every variable is stable under its update.
bool is_fixed_point(const BooleanNetwork& f, const Subspace& m);

// Exhaustive enumerations. Results are sorted. Networks larger than the
// relevant cap raise CapExceeded ("exact enumeration infeasible").
std::vector<Subspace> trap_spaces(const BooleanNetwork& f, const Caps& caps = {});
std::vector<Subspace> minimal_trap_spaces(const BooleanNetwork& f, const Caps& caps = {});
std::vector<State> fixed_points(const BooleanNetwork& f, const Caps& caps = {});

enum class UpdateScheme { Synchronous, Asynchronous };

/// Successor states in the state-transition graph. The asynchronous graph
/// keeps self-loops: s itself is a successor whenever some f_v(s) = s_v.
std::vector<State> successors(const BooleanNetwork& f, const State& s, UpdateScheme scheme,
                              const Caps& caps = {});

}  // namespace trapcount
