#include "trapcount/count.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "trapcount/encode.hpp"
#include "trapcount/error.hpp"
#include "trapcount/sat.hpp"
#include "trapcount/trap_spaces.hpp"

namespace trapcount {

std::string_view to_string(Problem p) {
    switch (p) {
        case Problem::Mts1: return "mts1";
        case Problem::Mts2: return "mts2";
        case Problem::Mts3: return "mts3";
        case Problem::Fix1: return "fix1";
        case Problem::Fix2: return "fix2";
        case Problem::Fix3: return "fix3";
    }
    return "";
}

std::optional<Problem> parse_problem(std::string_view text) {
    std::string lower(text);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (auto p : {Problem::Mts1, Problem::Mts2, Problem::Mts3, Problem::Fix1, Problem::Fix2, Problem::Fix3}) {
        if (lower == to_string(p)) return p;
    }
    return std::nullopt;
}

bool targets_fixed_points(Problem p) { return p == Problem::Fix1 || p == Problem::Fix2 || p == Problem::Fix3; }
bool uses_phenotype(Problem p) { return p != Problem::Mts1 && p != Problem::Fix1; }
bool uses_perturbations(Problem p) { return p == Problem::Mts3 || p == Problem::Fix3; }

std::string_view to_string(CountMode m) {
    switch (m) {
        case CountMode::Exact: return "exact";
        case CountMode::Approx: return "approx";
        case CountMode::External: return "external";
    }
    return "";
}

BooleanNetwork apply_perturbation(const BooleanNetwork& f, const Perturbation& sigma) {
    std::vector<std::pair<std::string, Expr>> fs;
    std::vector<Expr> functions(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) functions[v] = f.function(v);
    for (const auto& [name, value] : sigma.assignment) {
        const std::size_t v = f.require(name);
        if (value != Tri::Star) functions[v] = Expr::constant(value == Tri::One);
    }
    fs.reserve(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) fs.emplace_back(f.name(v), std::move(functions[v]));
    return BooleanNetwork(std::move(fs));
}

void for_each_perturbation(const PerturbationSet& x, const std::function<void(const Perturbation&)>& visit) {
    static constexpr Tri kDigits[] = {Tri::Star, Tri::Zero, Tri::One};
    Perturbation sigma;
    for (const auto& v : x.names) sigma.assignment.emplace_back(v, Tri::Star);
    std::vector<std::uint8_t> digits(x.size(), 0);
    while (true) {
        visit(sigma);
        std::size_t k = 0;
        while (k < digits.size() && digits[k] == 2) {
            digits[k] = 0;
            sigma.assignment[k].second = kDigits[0];
            ++k;
        }
        if (k == digits.size()) return;
        ++digits[k];
        sigma.assignment[k].second = kDigits[digits[k]];
    }
}

std::uint64_t approx_threshold(double epsilon) {
    const double ratio = 1.0 + 1.0 / epsilon;
    return static_cast<std::uint64_t>(std::ceil(1.0 + 9.84 * (1.0 + epsilon / (1.0 + epsilon)) * ratio * ratio));
}

std::uint64_t approx_trials(double delta) {
    return static_cast<std::uint64_t>(std::ceil(17.0 * std::log2(3.0 / delta)));
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_perturbation_cap(const PerturbationSet& x, const Caps& caps) {
    if (x.size() > caps.perturbation_vars) {
        throw CapExceeded("exact enumeration infeasible: 3^" + std::to_string(x.size()) +
                          " perturbations exceeds the cap of 3^" + std::to_string(caps.perturbation_vars));
    }
}

std::vector<std::string> overlap_warnings(const Phenotype& beta, const PerturbationSet& x) {
    std::vector<std::string> out;
    std::unordered_set<std::string> traits;
    for (const auto& t : beta.traits) traits.insert(t.variable);
    for (const auto& v : x.names) {
        if (traits.count(v)) out.push_back("perturbable variable '" + v + "' is also constrained by the phenotype");
    }
    return out;
}

bool has_satisfying_mts(const BooleanNetwork& f, const Phenotype& beta, const Caps& caps) {
    const auto mts = minimal_trap_spaces(f, caps);
    return std::any_of(mts.begin(), mts.end(), [&](const Subspace& m) { return beta.satisfied_by(f, m); });
}

std::set<Atom> as_set(const std::vector<Atom>& atoms) { return {atoms.begin(), atoms.end()}; }

// Projected count of the reduction to the perturbed network via the
// answer-set oracle, or nullopt if the program exceeds the oracle cap.
std::optional<BigInt> projected_reduction(Problem problem, const BooleanNetwork& g, const Phenotype& beta,
                                          const PerturbationSet& x, const Caps& caps) {
    const bool fix = targets_fixed_points(problem);
    AspProgram p = fix ? encode_fasp(g) : encode_tsconj(g, caps);
    p.append(encode_phenotype(beta, fix ? Target::FixedPoints : Target::MinimalTrapSpaces, g));
    if (p.atoms().size() > caps.asp_atoms) return std::nullopt;
    return projected_count(p, as_set(projection_atoms(x).atoms), caps);
}

// Draws XOR rows over the support lazily from a per-trial seed.
class HashFamily {
public:
    HashFamily(std::uint64_t seed, std::span<const std::uint32_t> support)
        : rng_(seed), support_(support.begin(), support.end()) {}

    const std::vector<std::uint32_t>& row(std::size_t i) {
        while (rows_.size() <= i) draw();
        return rows_[i];
    }
    bool parity(std::size_t i) {
        while (rows_.size() <= i) draw();
        return parities_[i];
    }

private:
    // Each support variable joins with probability 1/2; the parity bit is uniform.
    void draw() {
        std::vector<std::uint32_t> row;
        std::uint64_t bits = 0;
        int left = 0;
        auto next_bit = [&] {
            if (left == 0) {
                bits = rng_();
                left = 64;
            }
            const bool b = bits & 1U;
            bits >>= 1;
            --left;
            return b;
        };
        for (auto v : support_) {
            if (next_bit()) row.push_back(v);
        }
        parities_.push_back(next_bit());
        rows_.push_back(std::move(row));
    }

    std::mt19937_64 rng_;
    std::vector<std::uint32_t> support_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<bool> parities_;
};

}  // namespace

CountResult count_exact(Problem problem, const BooleanNetwork& f, const Phenotype& beta,
                        const PerturbationSet& x, const Caps& caps) {
    const auto start = Clock::now();
    CountResult result;
    result.problem = problem;
    result.mode = CountMode::Exact;

    const bool fix = targets_fixed_points(problem);
    const Phenotype active = uses_phenotype(problem) ? beta : Phenotype{};
    active.validate(f);
    if (fix && active.has_star()) throw Error("fixed-point problems cannot use '*' traits");

    switch (problem) {
        case Problem::Mts1:
        case Problem::Mts2: {
            const auto mts = minimal_trap_spaces(f, caps);
            result.count = std::count_if(mts.begin(), mts.end(),
                                         [&](const Subspace& m) { return active.satisfied_by(f, m); });
            break;
        }
        case Problem::Fix1:
        case Problem::Fix2: {
            const auto fps = fixed_points(f, caps);
            result.count = std::count_if(fps.begin(), fps.end(),
                                         [&](const State& s) { return active.satisfied_by(f, s); });
            break;
        }
        case Problem::Mts3:
        case Problem::Fix3: {
            x.validate(f);
            check_perturbation_cap(x, caps);
            if (!fix && f.size() > caps.subspace_vars) {
                throw CapExceeded("exact enumeration infeasible: " + std::to_string(f.size()) +
                                  " variables exceeds the subspace cap of " + std::to_string(caps.subspace_vars));
            }
            result.warnings = overlap_warnings(active, x);
            result.perturbable_vars = x.size();
            std::uint64_t count = 0;
            for_each_perturbation(x, [&](const Perturbation& sigma) {
                const auto perturbed = apply_perturbation(f, sigma);
                const bool hit = fix ? solve(encode_fix_cnf(perturbed, active)).status == SatStatus::Sat
                                     : has_satisfying_mts(perturbed, active, caps);
                count += hit ? 1 : 0;
            });
            result.count = count;

            // Cross-check through the perturbed network and projection.
            const auto g = perturb_transform(f, x);
            if (fix) {
                const auto cnf = encode_perturbed_fix_cnf(f, x, active);
                SatSolver solver(cnf);
                const auto projected = count_projected_upto(solver, cnf.support, count + 2);
                if (projected.count != count) {
                    throw std::logic_error("fix3: per-perturbation count " + std::to_string(count) +
                                           " disagrees with projected SAT count " +
                                           std::to_string(projected.count));
                }
            }
            if (auto projected = projected_reduction(problem, g, active, x, caps)) {
                if (*projected != result.count) {
                    throw std::logic_error(std::string(to_string(problem)) +
                                           ": per-perturbation count disagrees with projected answer-set count");
                }
                result.cross_checked = true;
            } else {
                result.cross_checked = fix;
            }
            break;
        }
    }
    result.elapsed_ms = millis_since(start);
    return result;
}

CountResult count_fix_approx(Problem problem, const BooleanNetwork& f, const Phenotype& beta,
                             const PerturbationSet& x, const ApproxParams& params) {
    const auto start = Clock::now();
    if (!targets_fixed_points(problem)) {
        throw Error("approximate counting is only available for fixed-point problems");
    }
    if (!(params.epsilon > 0 && params.epsilon < 1)) throw Error("epsilon must lie in (0, 1)");
    if (!(params.delta > 0 && params.delta < 1)) throw Error("delta must lie in (0, 1)");

    const Phenotype active = uses_phenotype(problem) ? beta : Phenotype{};
    active.validate(f);
    if (active.has_star()) throw Error("fixed-point problems cannot use '*' traits");

    CountResult result;
    result.problem = problem;
    result.mode = CountMode::Approx;
    result.approx = params;
    result.threshold = approx_threshold(params.epsilon);

    CnfFormula cnf;
    std::vector<std::uint32_t> support;
    if (uses_perturbations(problem)) {
        x.validate(f);
        result.warnings = overlap_warnings(active, x);
        result.perturbable_vars = x.size();
        cnf = encode_perturbed_fix_cnf(f, x, active);
        support = cnf.support;
    } else {
        cnf = encode_fix_cnf(f, active);
        support = cnf.support;
    }
    const SolverOptions options{params.conflict_budget, 0};
    const std::uint64_t thresh = result.threshold;

    {
        SatSolver solver(cnf, options);
        const auto base = count_projected_upto(solver, support, thresh);
        if (!base.saturated) {
            result.count = base.count;
            result.elapsed_ms = millis_since(start);
            return result;
        }
    }

    const std::uint64_t trials = approx_trials(params.delta);
    result.trials = trials;
    const std::size_t max_hashes = support.size() + 64;
    std::mt19937_64 seeds(params.seed);
    std::vector<BigInt> estimates;
    estimates.reserve(trials);
    std::size_t previous = 1;

    for (std::uint64_t t = 0; t < trials; ++t) {
        HashFamily hashes(seeds(), support);
        std::map<std::size_t, BoundedCount> cells;
        // Projected models in the cell cut out by the first m hash rows.
        auto cell = [&](std::size_t m) -> const BoundedCount& {
            auto it = cells.find(m);
            if (it != cells.end()) return it->second;
            SatSolver solver(cnf, options);
            for (std::size_t i = 0; i < m; ++i) solver.add_xor(hashes.row(i), hashes.parity(i));
            return cells.emplace(m, count_projected_upto(solver, support, thresh)).first->second;
        };

        // Smallest m whose cell holds fewer than thresh models; cell sizes
        // shrink as rows are added, so search outward from the last answer.
        std::size_t m = std::max<std::size_t>(previous, 1);
        if (cell(m).saturated) {
            while (cell(m).saturated) {
                if (++m > max_hashes) throw Error("hash search did not converge");
            }
        } else {
            while (m > 1 && !cell(m - 1).saturated) --m;
        }
        previous = m;
        estimates.push_back(BigInt(cell(m).count) << m);
    }

    std::sort(estimates.begin(), estimates.end());
    result.count = estimates[(estimates.size() - 1) / 2];
    result.elapsed_ms = millis_since(start);
    return result;
}

CountResult external_count(Problem problem, BigInt count, const ApproxParams& params,
                           std::optional<std::size_t> perturbable_vars) {
    if (count < 0) throw Error("count must be nonnegative");
    CountResult result;
    result.problem = problem;
    result.count = std::move(count);
    result.mode = CountMode::External;
    result.approx = params;
    result.perturbable_vars = perturbable_vars;
    return result;
}

Rational observed_tolerance(const BigInt& cnt, const BigInt& exact) {
    if (cnt <= 0 || exact <= 0) throw Error("observed tolerance needs positive counts");
    const Rational up(cnt, exact);
    const Rational down(exact, cnt);
    return (up > down ? up : down) - 1;
}

Robustness robustness(const BigInt& count, std::size_t x_size) {
    const BigInt total = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(x_size));
    if (count < 0 || count > total) {
        throw Error("count " + count.str() + " exceeds the " + total.str() + " possible perturbations");
    }
    Robustness r;
    r.value = Rational(count, total);
    r.fraction = boost::multiprecision::numerator(r.value).str() + "/" +
                 boost::multiprecision::denominator(r.value).str();
    const BigInt milli = (count * 2000 + total) / (2 * total);  // round half up
    const std::string frac = BigInt(milli % 1000).str();
    r.decimal = BigInt(milli / 1000).str() + "." + std::string(3 - frac.size(), '0') + frac;
    return r;
}

}  // namespace trapcount
