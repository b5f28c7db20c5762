#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "trapcount/cnf.hpp"

namespace trapcount {

struct SolverOptions {
    /// Conflicts allowed per solve() call; 0 means unlimited.
    std::uint64_t conflict_budget = 0;
    /// 0 keeps the plain lowest-index-first branching order; any other value
    /// jitters initial variable activities with a PRNG seeded from it.
    std::uint64_t seed = 0;
};

enum class SatStatus { Sat, Unsat };

/// Conflict-driven clause-learning solver: two watched literals, first-UIP
/// learning, VSIDS, phase saving, Luby restarts and learnt-clause
/// reduction. Clauses may be added between solve() calls. Variables are
/// 1-based as in DIMACS. Not thread-safe; one instance per thread.
class SatSolver {
public:
    explicit SatSolver(SolverOptions options = {});
    explicit SatSolver(const CnfFormula& cnf, SolverOptions options = {});
    ~SatSolver();
    SatSolver(SatSolver&&) noexcept;
    SatSolver& operator=(SatSolver&&) noexcept;

    std::uint32_t num_vars() const noexcept;
    std::uint32_t new_var();
    /// Grows the variable range to at least n.
    void reserve_vars(std::uint32_t n);

    /// DIMACS-style literals; an empty clause makes the instance UNSAT.
    void add_clause(std::span<const int> literals);
    void add_clause(std::initializer_list<int> literals) {
        add_clause(std::span<const int>(literals.begin(), literals.size()));
    }

    /// Constrains the XOR of vars to equal parity. Repeated variables
    /// cancel. Longer constraints are split into chained chunks of four
    /// variables through fresh auxiliary variables, 8 clauses per chunk.
    void add_xor(std::span<const std::uint32_t> vars, bool parity);

    /// Throws BudgetExhausted when the conflict budget runs out.
    SatStatus solve();

    /// Value of var in the last model found by solve().
    bool value(std::uint32_t var) const;
    const std::vector<bool>& model() const noexcept;
    std::uint64_t conflicts() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct SolveOutcome {
    SatStatus status;
    std::vector<bool> model;  // index 0 unused; model[v] for v in 1..num_vars
};

SolveOutcome solve(const CnfFormula& cnf, SolverOptions options = {});

/// Result of bounded enumeration: either the exact number of projected
/// models (saturated == false, count < bound) or at least `bound` of them.
struct BoundedCount {
    std::uint64_t count = 0;
    bool saturated = false;

    friend bool operator==(const BoundedCount&, const BoundedCount&) = default;
};

/// Enumerates models distinct on `support`, adding a blocking clause over
/// the support after each one, until UNSAT or `bound` models were found.
/// The solver keeps the blocking clauses afterwards.
BoundedCount count_projected_upto(SatSolver& solver, std::span<const std::uint32_t> support,
                                  std::uint64_t bound);

}  // namespace trapcount
