#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trapcount/asp.hpp"
#include "trapcount/bnet.hpp"
#include "trapcount/caps.hpp"
#include "trapcount/network.hpp"

namespace trapcount {

using Rational = boost::multiprecision::cpp_rational;

/// The six counting problems: minimal trap spaces (MTS) or fixed points
/// (FIX); 1 counts all, 2 those satisfying a phenotype, 3 the perturbations
/// under which at least one satisfying solution exists.
enum class Problem { Mts1, Mts2, Mts3, Fix1, Fix2, Fix3 };

std::string_view to_string(Problem p);
/// Accepts "mts1" .. "fix3", case-insensitive.
std::optional<Problem> parse_problem(std::string_view text);
bool targets_fixed_points(Problem p);
bool uses_phenotype(Problem p);
bool uses_perturbations(Problem p);

/// sigma: X -> {0, 1, *}. 0 knocks a variable out (f_v := 0), 1
/// over-expresses it (f_v := 1), * leaves f_v unchanged.
struct Perturbation {
    std::vector<std::pair<std::string, Tri>> assignment;
};

/// f^sigma. Throws trapcount::Error on a variable not in f.
BooleanNetwork apply_perturbation(const BooleanNetwork& f, const Perturbation& sigma);

/// Calls visit for each of the 3^|X| perturbations, in odometer order with
/// the first variable of X varying fastest through *, 0, 1.
void for_each_perturbation(const PerturbationSet& x, const std::function<void(const Perturbation&)>& visit);

struct ApproxParams {
    double epsilon = 0.8;
    double delta = 0.2;
    std::uint64_t seed = 1;
    /// Per solve() call; 0 means unlimited.
    std::uint64_t conflict_budget = 0;
};

/// Cell-size threshold ceil(1 + 9.84 (1 + eps/(1+eps)) (1 + 1/eps)^2).
std::uint64_t approx_threshold(double epsilon);
/// Number of independent trials ceil(17 log2(3/delta)).
std::uint64_t approx_trials(double delta);

enum class CountMode { Exact, Approx, External };
std::string_view to_string(CountMode m);

struct CountResult {
    Problem problem = Problem::Mts1;
    BigInt count = 0;
    CountMode mode = CountMode::Exact;
    std::optional<ApproxParams> approx;  // set for Approx and External
    std::uint64_t threshold = 0;         // Approx only
    std::uint64_t trials = 0;            // Approx only; 0 when the count was below threshold
    bool cross_checked = false;          // Mts3/Fix3 exact: projected-count reduction agreed
    std::optional<std::size_t> perturbable_vars;  // |X| for Mts3/Fix3
    std::vector<std::string> warnings;
    double elapsed_ms = 0;
};

/// Exact answer by exhaustive oracles. Mts problems enumerate subspaces
/// (caps.subspace_vars), Fix1/Fix2 enumerate states (caps.state_vars),
/// Mts3/Fix3 loop over all 3^|X| perturbations (caps.perturbation_vars); Fix3
/// decides each perturbation with one SAT call. Mts3/Fix3 results are
/// cross-checked against the projected count over the perturbed network
/// whenever that oracle fits its cap; disagreement throws std::logic_error.
/// beta is ignored by Mts1/Fix1, x by problems other than Mts3/Fix3.
CountResult count_exact(Problem problem, const BooleanNetwork& f, const Phenotype& beta = {},
                        const PerturbationSet& x = {}, const Caps& caps = {});

/// (epsilon, delta)-approximate count of fixed points (Fix1/Fix2) or of
/// satisfying perturbations (Fix3, hashing over the helper variables of the
/// perturbed network). Returns the exact count when it is below the
/// threshold. Throws trapcount::Error for an Mts problem or epsilon/delta
/// outside (0, 1), BudgetExhausted when a solve call runs out of conflicts.
CountResult count_fix_approx(Problem problem, const BooleanNetwork& f, const Phenotype& beta,
                             const PerturbationSet& x, const ApproxParams& params);

/// Wraps a count produced by an external (approximate) answer-set counter.
CountResult external_count(Problem problem, BigInt count, const ApproxParams& params,
                           std::optional<std::size_t> perturbable_vars = std::nullopt);

/// max(cnt/exact, exact/cnt) - 1. Throws trapcount::Error unless both are positive.
Rational observed_tolerance(const BigInt& cnt, const BigInt& exact);

struct Robustness {
    Rational value;
    std::string fraction;  // "p/q"
    std::string decimal;   // three places, half up
};

/// count / 3^|X|. Throws trapcount::Error if count exceeds 3^|X|.
Robustness robustness(const BigInt& count, std::size_t x_size);

}  // namespace trapcount
