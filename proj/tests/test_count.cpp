#include <random>

#include "doctest.h"
#include "support.hpp"
#include "trapcount/count.hpp"
#include "trapcount/error.hpp"

using namespace trapcount;

namespace {

BooleanNetwork example() { return parse_bnet("a, a & !b\nb, a"); }

BooleanNetwork sources(int n) {
    std::string text;
    for (int i = 0; i < n; ++i) text += "s" + std::to_string(i) + ", s" + std::to_string(i) + "\n";
    return parse_bnet(text);
}

}  // namespace

TEST_CASE("problem names") {
    CHECK(parse_problem("MTS3") == Problem::Mts3);
    CHECK(parse_problem("fix1") == Problem::Fix1);
    CHECK_FALSE(parse_problem("mts4").has_value());
    CHECK(to_string(Problem::Fix2) == "fix2");
    CHECK(targets_fixed_points(Problem::Fix3));
    CHECK_FALSE(uses_phenotype(Problem::Mts1));
    CHECK(uses_perturbations(Problem::Mts3));
}

TEST_CASE("worked example counts") {
    const auto f = example();
    CHECK(count_exact(Problem::Mts1, f).count == 1);
    CHECK(count_exact(Problem::Fix1, f).count == 1);
    CHECK(count_exact(Problem::Mts2, f, parse_phenotype("b = *")).count == 0);
    const auto r = count_exact(Problem::Mts3, f, parse_phenotype("a = 0\nb = 0"), parse_perturbables("b"));
    CHECK(r.count == 2);
    CHECK(r.cross_checked);
    CHECK(r.perturbable_vars == 1u);
    CHECK(robustness(r.count, 1).fraction == "2/3");
    CHECK(robustness(r.count, 1).value == Rational(2, 3));
    CHECK(robustness(r.count, 1).decimal == "0.667");
    // Phenotype and perturbable b overlap.
    CHECK(r.warnings.size() == 1);
}

TEST_CASE("phenotype-free variants reduce to the plain counts") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = oracle::random_network(rng, 1 + trial % 5);
        CHECK(count_exact(Problem::Mts2, f).count == count_exact(Problem::Mts1, f).count);
        CHECK(count_exact(Problem::Fix2, f).count == count_exact(Problem::Fix1, f).count);
        CHECK(count_exact(Problem::Mts1, f).count == oracle::minimal_trap_spaces(f).size());
        CHECK(count_exact(Problem::Fix1, f).count == oracle::fixed_points(f).size());
    }
}

TEST_CASE("perturbation enumeration") {
    PerturbationSet x{{"a", "b"}};
    std::vector<std::string> seen;
    for_each_perturbation(x, [&](const Perturbation& s) {
        std::string code;
        for (const auto& [v, t] : s.assignment) code += to_char(t);
        seen.push_back(code);
    });
    CHECK(seen == std::vector<std::string>{"**", "0*", "1*", "*0", "00", "10", "*1", "01", "11"});
    int calls = 0;
    for_each_perturbation({}, [&](const Perturbation& s) {
        CHECK(s.assignment.empty());
        ++calls;
    });
    CHECK(calls == 1);

    const auto f = example();
    const auto ko = apply_perturbation(f, Perturbation{{{"b", Tri::Zero}}});
    CHECK(ko.function("b") == Expr::constant(false));
    CHECK(ko.function("a") == f.function("a"));
    CHECK_THROWS_AS(apply_perturbation(f, Perturbation{{{"z", Tri::One}}}), Error);
}

TEST_CASE("perturbation counts match the direct loop and the projected reductions") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = oracle::random_network(rng, 1 + trial % 4);
        PerturbationSet x;
        for (std::size_t v = 0; v < f.size() && x.size() < 2; ++v) {
            if (rng() % 2) x.names.push_back(f.name(v));
        }
        const auto beta = oracle::random_phenotype(rng, f, true);
        Phenotype fixed_beta;
        for (const auto& t : beta.traits) {
            if (t.value != Tri::Star) fixed_beta.traits.push_back(t);
        }
        Caps caps;
        caps.asp_atoms = 40;
        const auto mts = count_exact(Problem::Mts3, f, beta, x, caps);
        CHECK(mts.count == oracle::perturbation_count(f, beta, x, false));
        CHECK(mts.cross_checked);
        const auto fix = count_exact(Problem::Fix3, f, fixed_beta, x, caps);
        CHECK(fix.count == oracle::perturbation_count(f, fixed_beta, x, true));
        CHECK(fix.cross_checked);
    }
}

TEST_CASE("count errors") {
    const auto f = example();
    CHECK_THROWS_AS(count_exact(Problem::Fix2, f, parse_phenotype("a = *")), Error);
    CHECK_THROWS_AS(count_exact(Problem::Mts2, f, parse_phenotype("z = 1")), Error);
    Caps caps;
    caps.perturbation_vars = 1;
    CHECK_THROWS_AS(count_exact(Problem::Mts3, f, {}, parse_perturbables("a\nb"), caps), CapExceeded);
    CHECK_THROWS_AS(count_fix_approx(Problem::Mts1, f, {}, {}, {}), Error);
    CHECK_THROWS_AS(count_fix_approx(Problem::Fix1, f, {}, {}, {1.0, 0.2, 1, 0}), Error);
    CHECK_THROWS_AS(count_fix_approx(Problem::Fix1, f, {}, {}, {0.8, 0.0, 1, 0}), Error);
}

TEST_CASE("approximation constants") {
    CHECK(approx_threshold(0.8) == 73);
    CHECK(approx_trials(0.2) == 67);
}

TEST_CASE("approximate counts below the threshold are exact") {
    const auto none = count_fix_approx(Problem::Fix1, parse_bnet("a, !a"), {}, {}, {});
    CHECK(none.count == 0);
    CHECK(none.mode == CountMode::Approx);
    CHECK(none.trials == 0);
    CHECK(count_fix_approx(Problem::Fix1, sources(5), {}, {}, {}).count == 32);
    CHECK(count_fix_approx(Problem::Fix2, sources(5), parse_phenotype("s0 = 1"), {}, {}).count == 16);
    const auto f = example();
    const auto fix3 = count_fix_approx(Problem::Fix3, f, parse_phenotype("a = 0\nb = 0"), parse_perturbables("b"), {});
    CHECK(fix3.count == count_exact(Problem::Fix3, f, parse_phenotype("a = 0\nb = 0"), parse_perturbables("b")).count);
}

TEST_CASE("approximate count of 2^10 fixed points stays in the band") {
    const auto f = sources(10);
    int inside = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto r = count_fix_approx(Problem::Fix1, f, {}, {}, {0.8, 0.2, seed, 0});
        CHECK(r.trials == 67);
        CHECK(r.threshold == 73);
        const Rational ratio(r.count, 1024);
        if (ratio >= Rational(1) / Rational(18, 10) && ratio <= Rational(18, 10)) ++inside;
    }
    CHECK(inside >= 21);
}

TEST_CASE("approximate counting is reproducible") {
    const auto f = sources(9);
    const auto a = count_fix_approx(Problem::Fix1, f, {}, {}, {0.8, 0.2, 7, 0});
    const auto b = count_fix_approx(Problem::Fix1, f, {}, {}, {0.8, 0.2, 7, 0});
    CHECK(a.count == b.count);
}

TEST_CASE("observed tolerance and robustness") {
    CHECK(observed_tolerance(5, 5) == 0);
    CHECK(observed_tolerance(2, 1) == 1);
    CHECK(observed_tolerance(1, 2) == 1);
    CHECK_THROWS_AS(observed_tolerance(0, 2), Error);
    CHECK(robustness(BigInt("3486784401"), 20).decimal == "1.000");
    CHECK(robustness(BigInt("3486784401"), 20).fraction == "1/1");
    CHECK(robustness(0, 3).fraction == "0/1");
    CHECK(robustness(0, 3).decimal == "0.000");
    CHECK(robustness(1, 3).decimal == "0.037");
    CHECK_THROWS_AS(robustness(4, 1), Error);
}

TEST_CASE("external counts") {
    const auto r = external_count(Problem::Mts3, BigInt("1000000000000000000000000000000"), {}, 20);
    CHECK(r.mode == CountMode::External);
    CHECK(r.count.str() == "1000000000000000000000000000000");
    CHECK_THROWS_AS(external_count(Problem::Mts3, -1, {}), Error);
}
