#include "trapcount/sat.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <random>
#include <string>

#include "trapcount/error.hpp"

namespace trapcount {

namespace {

using Lit = std::uint32_t;  // 2 * var + negated, var 0-based
constexpr std::uint32_t kNoReason = ~std::uint32_t{0};

constexpr Lit make_lit(std::uint32_t var, bool negated) { return 2 * var + (negated ? 1U : 0U); }
constexpr std::uint32_t var_of(Lit l) { return l >> 1; }
constexpr Lit neg(Lit l) { return l ^ 1U; }

Lit from_dimacs(int lit) { return make_lit(static_cast<std::uint32_t>(std::abs(lit)) - 1, lit < 0); }

struct Clause {
    std::vector<Lit> lits;
    double activity = 0;
    bool learnt = false;
    bool deleted = false;
};

struct Watcher {
    std::uint32_t clause;
    Lit blocker;
};

// Luby sequence 1 1 2 1 1 2 4 ...
double luby(double base, std::uint64_t i) {
    std::uint64_t size = 1;
    std::uint64_t seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != i) {
        size = (size - 1) >> 1;
        --seq;
        i = i % size;
    }
    double r = 1;
    for (std::uint64_t k = 0; k < seq; ++k) r *= base;
    return r;
}

}  // namespace

struct SatSolver::Impl {
    SolverOptions options;
    std::mt19937_64 rng;

    std::vector<Clause> clauses;
    std::vector<std::vector<Watcher>> watches;  // per literal: clauses watching its negation
    std::vector<std::int8_t> lit_value;         // per literal: 1 true, -1 false, 0 unassigned
    std::vector<std::uint32_t> level;
    std::vector<std::uint32_t> reason;
    std::vector<bool> phase;                    // saved polarity: true = negated
    std::vector<double> activity;
    std::vector<char> seen;
    std::vector<Lit> trail;
    std::vector<std::size_t> trail_lim;
    std::size_t qhead = 0;

    // Binary max-heap on activity, ties to the lower variable index.
    std::vector<std::uint32_t> heap;
    std::vector<std::int64_t> heap_pos;

    double var_inc = 1.0;
    double clause_inc = 1.0;
    std::size_t num_learnts = 0;
    double max_learnts = 0;
    std::uint64_t total_conflicts = 0;
    bool ok = true;
    std::vector<bool> model{false};

    std::uint32_t nvars() const { return static_cast<std::uint32_t>(level.size()); }
    std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim.size()); }
    std::int8_t val(Lit l) const { return lit_value[l]; }

    bool heap_less(std::uint32_t a, std::uint32_t b) const {
        return activity[a] > activity[b] || (activity[a] == activity[b] && a < b);
    }

    void heap_up(std::size_t i) {
        const std::uint32_t v = heap[i];
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (!heap_less(v, heap[parent])) break;
            heap[i] = heap[parent];
            heap_pos[heap[i]] = static_cast<std::int64_t>(i);
            i = parent;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<std::int64_t>(i);
    }

    void heap_down(std::size_t i) {
        const std::uint32_t v = heap[i];
        while (true) {
            std::size_t child = 2 * i + 1;
            if (child >= heap.size()) break;
            if (child + 1 < heap.size() && heap_less(heap[child + 1], heap[child])) ++child;
            if (!heap_less(heap[child], v)) break;
            heap[i] = heap[child];
            heap_pos[heap[i]] = static_cast<std::int64_t>(i);
            i = child;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<std::int64_t>(i);
    }

    void heap_insert(std::uint32_t v) {
        if (heap_pos[v] >= 0) return;
        heap.push_back(v);
        heap_up(heap.size() - 1);
    }

    std::uint32_t heap_pop() {
        const std::uint32_t top = heap.front();
        heap_pos[top] = -1;
        if (heap.size() > 1) {
            heap.front() = heap.back();
            heap.pop_back();
            heap_down(0);
        } else {
            heap.pop_back();
        }
        return top;
    }

    std::uint32_t add_var() {
        const std::uint32_t v = nvars();
        level.push_back(0);
        reason.push_back(kNoReason);
        phase.push_back(true);
        activity.push_back(options.seed != 0 ? std::uniform_real_distribution<double>(0, 1e-5)(rng) : 0.0);
        seen.push_back(0);
        lit_value.push_back(0);
        lit_value.push_back(0);
        watches.emplace_back();
        watches.emplace_back();
        heap_pos.push_back(-1);
        heap_insert(v);
        model.push_back(false);
        return v;
    }

    void assign(Lit l, std::uint32_t from) {
        const std::uint32_t v = var_of(l);
        lit_value[l] = 1;
        lit_value[neg(l)] = -1;
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(l);
    }

    void attach(std::uint32_t ci) {
        const auto& c = clauses[ci].lits;
        watches[neg(c[0])].push_back({ci, c[1]});
        watches[neg(c[1])].push_back({ci, c[0]});
    }

    // Returns the conflicting clause or kNoReason.
    std::uint32_t propagate() {
        while (qhead < trail.size()) {
            const Lit p = trail[qhead++];  // p became true; visit clauses watching !p
            auto& ws = watches[p];
            std::size_t i = 0, j = 0;
            const Lit false_lit = neg(p);
            while (i < ws.size()) {
                const Watcher w = ws[i];
                if (clauses[w.clause].deleted) {
                    ++i;
                    continue;
                }
                if (val(w.blocker) == 1) {
                    ws[j++] = ws[i++];
                    continue;
                }
                auto& c = clauses[w.clause].lits;
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                ++i;
                const Lit first = c[0];
                if (first != w.blocker && val(first) == 1) {
                    ws[j++] = {w.clause, first};
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (val(c[k]) != -1) {
                        std::swap(c[1], c[k]);
                        watches[neg(c[1])].push_back({w.clause, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = {w.clause, first};
                if (val(first) == -1) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead = trail.size();
                    return w.clause;
                }
                assign(first, w.clause);
            }
            ws.resize(j);
        }
        return kNoReason;
    }

    void cancel_until(std::uint32_t target) {
        if (decision_level() <= target) return;
        for (std::size_t i = trail.size(); i-- > trail_lim[target];) {
            const std::uint32_t v = var_of(trail[i]);
            phase[v] = (trail[i] & 1U) != 0;
            lit_value[trail[i]] = 0;
            lit_value[neg(trail[i])] = 0;
            reason[v] = kNoReason;
            heap_insert(v);
        }
        trail.resize(trail_lim[target]);
        trail_lim.resize(target);
        qhead = trail.size();
    }

    void bump_var(std::uint32_t v) {
        activity[v] += var_inc;
        if (activity[v] > 1e100) {
            for (auto& a : activity) a *= 1e-100;
            var_inc *= 1e-100;
        }
        if (heap_pos[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos[v]));
    }

    void bump_clause(Clause& c) {
        c.activity += clause_inc;
        if (c.activity > 1e20) {
            for (auto& cl : clauses) {
                if (cl.learnt) cl.activity *= 1e-20;
            }
            clause_inc *= 1e-20;
        }
    }

    // First-UIP conflict analysis with local minimization.
    std::pair<std::vector<Lit>, std::uint32_t> analyze(std::uint32_t conflict) {
        std::vector<Lit> learnt{0};
        std::vector<std::uint32_t> touched;
        int pending = 0;
        Lit p = 0;
        bool have_p = false;
        std::size_t index = trail.size();
        std::uint32_t ci = conflict;
        do {
            Clause& c = clauses[ci];
            if (c.learnt) bump_clause(c);
            for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
                const Lit q = c.lits[k];
                const std::uint32_t v = var_of(q);
                if (seen[v] || level[v] == 0) continue;
                seen[v] = 1;
                touched.push_back(v);
                bump_var(v);
                if (level[v] >= decision_level()) ++pending;
                else learnt.push_back(q);
            }
            while (!seen[var_of(trail[--index])]) {
            }
            p = trail[index];
            have_p = true;
            ci = reason[var_of(p)];
            seen[var_of(p)] = 0;
            --pending;
        } while (pending > 0);
        learnt[0] = neg(p);

        // Drop literals implied by the rest of the clause.
        std::size_t keep = 1;
        for (std::size_t i = 1; i < learnt.size(); ++i) {
            const std::uint32_t r = reason[var_of(learnt[i])];
            bool redundant = r != kNoReason;
            if (redundant) {
                for (const Lit q : clauses[r].lits) {
                    const std::uint32_t v = var_of(q);
                    if (v != var_of(learnt[i]) && !seen[v] && level[v] > 0) {
                        redundant = false;
                        break;
                    }
                }
            }
            if (!redundant) learnt[keep++] = learnt[i];
        }
        learnt.resize(keep);
        for (auto v : touched) seen[v] = 0;

        std::uint32_t back = 0;
        if (learnt.size() > 1) {
            std::size_t max_i = 1;
            for (std::size_t i = 2; i < learnt.size(); ++i) {
                if (level[var_of(learnt[i])] > level[var_of(learnt[max_i])]) max_i = i;
            }
            std::swap(learnt[1], learnt[max_i]);
            back = level[var_of(learnt[1])];
        }
        return {std::move(learnt), back};
    }

    bool locked(std::uint32_t ci) const {
        const Lit first = clauses[ci].lits[0];
        return val(first) == 1 && reason[var_of(first)] == ci;
    }

    void reduce_learnts() {
        std::vector<std::uint32_t> cand;
        for (std::uint32_t i = 0; i < clauses.size(); ++i) {
            const auto& c = clauses[i];
            if (c.learnt && !c.deleted && c.lits.size() > 2 && !locked(i)) cand.push_back(i);
        }
        std::sort(cand.begin(), cand.end(), [&](std::uint32_t a, std::uint32_t b) {
            return clauses[a].activity < clauses[b].activity || (clauses[a].activity == clauses[b].activity && a < b);
        });
        for (std::size_t i = 0; i < cand.size() / 2; ++i) {
            clauses[cand[i]].deleted = true;
            clauses[cand[i]].lits.clear();
            clauses[cand[i]].lits.shrink_to_fit();
            --num_learnts;
        }
    }

    void add_clause(std::span<const int> input) {
        if (!ok) return;
        cancel_until(0);
        std::vector<Lit> lits;
        lits.reserve(input.size());
        for (int x : input) {
            if (x == 0) throw Error("zero literal in clause");
            const auto v = static_cast<std::uint32_t>(std::abs(x));
            while (nvars() < v) add_var();
            lits.push_back(from_dimacs(x));
        }
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        std::vector<Lit> kept;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return;  // tautology
            if (val(lits[i]) == 1) return;                                     // satisfied at level 0
            if (val(lits[i]) == 0) kept.push_back(lits[i]);
        }
        if (kept.empty()) {
            ok = false;
            return;
        }
        if (kept.size() == 1) {
            assign(kept[0], kNoReason);
            ok = propagate() == kNoReason;
            return;
        }
        clauses.push_back({std::move(kept), 0, false, false});
        attach(static_cast<std::uint32_t>(clauses.size() - 1));
    }

    std::uint32_t pick_branch() {
        while (!heap.empty()) {
            const std::uint32_t v = heap_pop();
            if (lit_value[make_lit(v, false)] == 0) return v;
        }
        return kNoReason;
    }

    SatStatus search() {
        if (!ok) return SatStatus::Unsat;
        cancel_until(0);
        if (propagate() != kNoReason) {
            ok = false;
            return SatStatus::Unsat;
        }
        std::size_t problem_clauses = 0;
        for (const auto& c : clauses) problem_clauses += (!c.learnt && !c.deleted) ? 1 : 0;
        if (max_learnts < 1) max_learnts = std::max<double>(problem_clauses / 3.0, 1000.0);

        std::uint64_t conflicts_here = 0;
        for (std::uint64_t restart = 0;; ++restart) {
            const auto limit = static_cast<std::uint64_t>(luby(2.0, restart) * 100);
            std::uint64_t local = 0;
            while (true) {
                const std::uint32_t conflict = propagate();
                if (conflict != kNoReason) {
                    ++total_conflicts;
                    ++conflicts_here;
                    ++local;
                    if (decision_level() == 0) {
                        ok = false;
                        return SatStatus::Unsat;
                    }
                    auto [learnt, back] = analyze(conflict);
                    cancel_until(back);
                    if (learnt.size() == 1) {
                        assign(learnt[0], kNoReason);
                    } else {
                        clauses.push_back({std::move(learnt), 0, true, false});
                        const auto ci = static_cast<std::uint32_t>(clauses.size() - 1);
                        attach(ci);
                        bump_clause(clauses[ci]);
                        ++num_learnts;
                        assign(clauses[ci].lits[0], ci);
                    }
                    var_inc /= 0.95;
                    clause_inc /= 0.999;
                    if (options.conflict_budget != 0 && conflicts_here >= options.conflict_budget) {
                        cancel_until(0);
                        throw BudgetExhausted("conflict budget of " + std::to_string(options.conflict_budget) +
                                              " exhausted");
                    }
                    continue;
                }
                if (local >= limit) {
                    cancel_until(0);
                    break;
                }
                if (static_cast<double>(num_learnts) >= max_learnts + static_cast<double>(trail.size())) {
                    reduce_learnts();
                    max_learnts *= 1.1;
                }
                const std::uint32_t v = pick_branch();
                if (v == kNoReason) {
                    for (std::uint32_t x = 0; x < nvars(); ++x) model[x + 1] = val(make_lit(x, false)) == 1;
                    cancel_until(0);
                    return SatStatus::Sat;
                }
                trail_lim.push_back(trail.size());
                assign(make_lit(v, phase[v]), kNoReason);
            }
        }
    }
};

SatSolver::SatSolver(SolverOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->options = options;
    impl_->rng.seed(options.seed);
}

SatSolver::SatSolver(const CnfFormula& cnf, SolverOptions options) : SatSolver(options) {
    reserve_vars(cnf.num_vars);
    for (const auto& c : cnf.clauses) add_clause(c);
}

SatSolver::~SatSolver() = default;
SatSolver::SatSolver(SatSolver&&) noexcept = default;
SatSolver& SatSolver::operator=(SatSolver&&) noexcept = default;

std::uint32_t SatSolver::num_vars() const noexcept { return impl_->nvars(); }

std::uint32_t SatSolver::new_var() { return impl_->add_var() + 1; }

void SatSolver::reserve_vars(std::uint32_t n) {
    while (impl_->nvars() < n) impl_->add_var();
}

void SatSolver::add_clause(std::span<const int> literals) { impl_->add_clause(literals); }

void SatSolver::add_xor(std::span<const std::uint32_t> vars, bool parity) {
    // Repeated variables cancel in pairs.
    std::vector<std::uint32_t> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint32_t> list;
    for (std::size_t i = 0; i < sorted.size();) {
        if (sorted[i] == 0) throw Error("variable 0 in XOR constraint");
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if ((j - i) % 2 == 1) list.push_back(sorted[i]);
        i = j;
    }
    reserve_vars(list.empty() ? 0 : list.back());
    if (list.empty()) {
        if (parity) add_clause(std::span<const int>{});
        return;
    }

    // Forbid every assignment of `chunk` whose parity differs from `want`.
    auto add_parity = [this](const std::vector<std::uint32_t>& chunk, bool want) {
        const std::uint32_t k = static_cast<std::uint32_t>(chunk.size());
        std::vector<int> clause(k);
        for (std::uint32_t pattern = 0; pattern < (1U << k); ++pattern) {
            if ((std::popcount(pattern) % 2 == 1) == want) continue;
            for (std::uint32_t i = 0; i < k; ++i) {
                const int v = static_cast<int>(chunk[i]);
                clause[i] = ((pattern >> i) & 1U) ? -v : v;
            }
            add_clause(clause);
        }
    };

    constexpr std::size_t kChunk = 4;
    std::size_t start = 0;
    std::uint32_t carry = 0;  // auxiliary holding the parity of the prefix
    while (list.size() - start + (carry ? 1 : 0) > kChunk) {
        std::vector<std::uint32_t> chunk;
        if (carry) chunk.push_back(carry);
        while (chunk.size() < kChunk - 1) chunk.push_back(list[start++]);
        const std::uint32_t aux = new_var();
        chunk.push_back(aux);
        add_parity(chunk, false);  // aux = xor of the other chunk members
        carry = aux;
    }
    std::vector<std::uint32_t> last;
    if (carry) last.push_back(carry);
    last.insert(last.end(), list.begin() + static_cast<std::ptrdiff_t>(start), list.end());
    add_parity(last, parity);
}

SatStatus SatSolver::solve() { return impl_->search(); }

bool SatSolver::value(std::uint32_t var) const {
    if (var == 0 || var > num_vars()) throw Error("variable " + std::to_string(var) + " out of range");
    return impl_->model[var];
}

const std::vector<bool>& SatSolver::model() const noexcept { return impl_->model; }

std::uint64_t SatSolver::conflicts() const noexcept { return impl_->total_conflicts; }

SolveOutcome solve(const CnfFormula& cnf, SolverOptions options) {
    SatSolver solver(cnf, options);
    const auto status = solver.solve();
    return {status, status == SatStatus::Sat ? solver.model() : std::vector<bool>{}};
}

BoundedCount count_projected_upto(SatSolver& solver, std::span<const std::uint32_t> support,
                                  std::uint64_t bound) {
    if (bound == 0) throw Error("enumeration bound must be at least 1");
    BoundedCount out;
    std::vector<int> blocking(support.size());
    while (out.count < bound) {
        if (solver.solve() == SatStatus::Unsat) return out;
        ++out.count;
        for (std::size_t i = 0; i < support.size(); ++i) {
            const int v = static_cast<int>(support[i]);
            blocking[i] = solver.value(support[i]) ? -v : v;
        }
        solver.add_clause(blocking);
    }
    out.saturated = true;
    return out;
}

}  // namespace trapcount
