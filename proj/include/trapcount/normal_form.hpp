#pragma once

#include <cstddef>

#include "trapcount/expr.hpp"

namespace trapcount {

/// Negation normal form: negations pushed onto variables by De Morgan and
/// double negation; negated constants are flipped.
Expr to_nnf(const Expr& e);

/// Removes constants: 0/1 are absorbed by or dropped from And/Or. The
/// result is either a single constant or contains no constant at all.
Expr fold_constants(const Expr& e);

/// Disjunctive normal form by distribution over the NNF. Duplicate literals
/// are merged, contradictory terms (x and !x) and duplicate terms dropped.
/// Returns constant 0 when no term survives and constant 1 when a term
/// becomes empty. Throws CapExceeded when an intermediate term list grows
/// past max_terms.
Expr to_dnf(const Expr& e, std::size_t max_terms = 100000);

/// Safeness: the NNF of e contains no conjunction with one operand
/// mentioning x and another mentioning !x.
bool is_safe(const Expr& e);

}  // namespace trapcount
