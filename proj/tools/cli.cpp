#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "trapcount/bnet.hpp"
#include "trapcount/caps.hpp"
#include "trapcount/count.hpp"
#include "trapcount/encode.hpp"
#include "trapcount/error.hpp"
#include "trapcount/trap_spaces.hpp"

namespace trapcount::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Inputs {
    std::string network;
    std::string phenotype;
    std::string perturb;
    std::string caps;
};

struct CountOptions {
    Inputs in;
    std::string problem = "mts1";
    std::string mode = "auto";
    double epsilon = 0.8;
    double delta = 0.2;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;
    std::string format = "json";
    std::string external;
    std::string emit;
};

struct EncodeOptions {
    Inputs in;
    std::string problem = "mts1";
    std::string target = "asp";
    std::string output;
};

struct VerifyOptions {
    Inputs in;
    std::string subspace;
};

// Prefixes parse errors with the file they came from.
template <typename T, typename Parse>
T load(const std::string& path, Parse&& parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

struct Loaded {
    BooleanNetwork f;
    Phenotype beta;
    PerturbationSet x;
    Caps caps;
};

Loaded load_inputs(const Inputs& in) {
    Loaded out;
    out.caps = parse_caps(in.caps, caps_from_env());
    out.f = load<BooleanNetwork>(in.network, [](const std::string& t) { return parse_bnet(t); });
    if (!in.phenotype.empty()) {
        out.beta = load<Phenotype>(in.phenotype, [](const std::string& t) { return parse_phenotype(t); });
        out.beta.validate(out.f);
    }
    if (!in.perturb.empty()) {
        out.x = load<PerturbationSet>(in.perturb, [](const std::string& t) { return parse_perturbables(t); });
        out.x.validate(out.f);
    }
    return out;
}

Problem require_problem(const std::string& name) {
    auto p = parse_problem(name);
    if (!p) throw Error("unknown problem '" + name + "' (expected mts1..mts3 or fix1..fix3)");
    return *p;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw Error("failed writing '" + path + "'");
}

// ASP program for a problem: tsconj or fASP over f (or the perturbed
// network), plus phenotype constraints, projected on Omega when X is used.
std::string asp_text(Problem problem, const Loaded& in) {
    const bool fix = targets_fixed_points(problem);
    const bool perturbed = uses_perturbations(problem);
    const BooleanNetwork net = perturbed ? perturb_transform(in.f, in.x) : in.f;
    AspProgram p = fix ? encode_fasp(net) : encode_tsconj(net, in.caps);
    if (uses_phenotype(problem)) {
        p.append(encode_phenotype(in.beta, fix ? Target::FixedPoints : Target::MinimalTrapSpaces, net));
    }
    std::vector<Atom> show;
    if (perturbed) show = projection_atoms(in.x).atoms;
    return render_asp(p, show);
}

std::string cnf_text(Problem problem, const Loaded& in) {
    if (!targets_fixed_points(problem)) throw Error("the CNF encoding only covers fixed-point problems");
    const Phenotype beta = uses_phenotype(problem) ? in.beta : Phenotype{};
    if (uses_perturbations(problem)) return render_dimacs(encode_perturbed_fix_cnf(in.f, in.x, beta));
    return render_dimacs(encode_fix_cnf(in.f, beta));
}

Json report(const CountResult& r) {
    Json j;
    j["problem"] = std::string(to_string(r.problem));
    const bool exact = r.mode == CountMode::Exact;
    j["mode"] = exact ? "exact" : "approx";
    if (r.mode == CountMode::External) j["provenance"] = "external";
    j["count"] = r.count.str();
    if (r.approx) {
        j["epsilon"] = r.approx->epsilon;
        j["delta"] = r.approx->delta;
        j["seed"] = r.approx->seed;
    } else {
        j["epsilon"] = nullptr;
        j["delta"] = nullptr;
        j["seed"] = nullptr;
    }
    j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
    if (r.mode == CountMode::Approx) {
        j["threshold"] = r.threshold;
        j["trials"] = r.trials;
    }
    std::vector<std::string> warnings = r.warnings;
    if (uses_perturbations(r.problem)) {
        const std::size_t x_size = r.perturbable_vars.value_or(0);
        j["perturbable_vars"] = x_size;
        BigInt count = r.count;
        const BigInt total = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(x_size));
        if (!exact && count > total) {
            warnings.push_back("estimate exceeds 3^" + std::to_string(x_size) + "; robustness clamped to 1");
            count = total;
        }
        const auto rob = robustness(count, x_size);
        j["robustness"] = rob.fraction;
        j["robustness_decimal"] = rob.decimal;
        if (exact) j["cross_checked"] = r.cross_checked;
    }
    j["warnings"] = warnings;
    return j;
}

std::string tsv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string joined;
        for (const auto& item : v) {
            if (!joined.empty()) joined += "; ";
            joined += tsv_cell(item);
        }
        return joined;
    }
    return v.dump();
}

void print_report(const Json& j, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << j.dump(2) << "\n";
        return;
    }
    std::string header, row;
    for (const auto& [key, value] : j.items()) {
        if (!header.empty()) {
            header += '\t';
            row += '\t';
        }
        header += key;
        row += tsv_cell(value);
    }
    out << header << "\n" << row << "\n";
}

int delegate(Problem problem, const Loaded& in, const CountOptions& o, std::ostream& out, std::ostream& err) {
    err << "approximate counting of minimal trap spaces needs an external answer-set counter; "
        << "emitting the encoding" << (o.emit.empty() ? "" : " to " + o.emit)
        << ". Pass its result back with --external-count.\n";
    write_output(o.emit, asp_text(problem, in), out);
    return kOk;
}

int cmd_count(const CountOptions& o, std::ostream& out, std::ostream& err) {
    const Problem problem = require_problem(o.problem);
    if (!(o.epsilon > 0 && o.epsilon < 1)) throw Error("--epsilon must lie in (0, 1)");
    if (!(o.delta > 0 && o.delta < 1)) throw Error("--delta must lie in (0, 1)");
    const Loaded in = load_inputs(o.in);
    const ApproxParams params{o.epsilon, o.delta, o.seed, o.budget};
    const bool fix = targets_fixed_points(problem);
    const PerturbationSet x = uses_perturbations(problem) ? in.x : PerturbationSet{};

    CountResult result;
    if (!o.external.empty()) {
        BigInt count;
        try {
            count = BigInt(o.external);
        } catch (const std::exception&) {
            throw Error("--external-count must be a nonnegative integer");
        }
        std::optional<std::size_t> x_size;
        if (uses_perturbations(problem)) x_size = x.size();
        result = external_count(problem, count, params, x_size);
    } else if (o.mode == "exact") {
        result = count_exact(problem, in.f, in.beta, x, in.caps);
    } else if (o.mode == "approx") {
        if (!fix) return delegate(problem, in, o, out, err);
        result = count_fix_approx(problem, in.f, in.beta, x, params);
    } else {
        try {
            result = count_exact(problem, in.f, in.beta, x, in.caps);
        } catch (const CapExceeded& e) {
            err << "note: " << e.what() << "\n";
            if (!fix) return delegate(problem, in, o, out, err);
            err << "note: falling back to approximate counting\n";
            result = count_fix_approx(problem, in.f, in.beta, x, params);
        }
    }
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    print_report(report(result), o.format, out);
    return kOk;
}

int cmd_encode(const EncodeOptions& o, std::ostream& out) {
    const Problem problem = require_problem(o.problem);
    const Loaded in = load_inputs(o.in);
    write_output(o.output, o.target == "asp" ? asp_text(problem, in) : cnf_text(problem, in), out);
    return kOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    const Loaded in = load_inputs(o.in);
    const Subspace m = Subspace::from_string(o.subspace);
    if (m.size() != in.f.size()) {
        throw Error("subspace has " + std::to_string(m.size()) + " entries but the network has " +
                    std::to_string(in.f.size()) + " variables");
    }
    auto yes_no = [](bool b) { return b ? "yes" : "no"; };
    const bool trap = is_trap_space(in.f, m);
    out << "trap space: " << yes_no(trap) << "\n";
    out << "minimal: " << yes_no(trap && is_minimal_trap_space(in.f, m, in.caps)) << "\n";
    out << "fixed point: " << yes_no(is_fixed_point(in.f, m)) << "\n";
    if (!o.in.phenotype.empty()) {
        out << "phenotype: " << (in.beta.satisfied_by(in.f, m) ? "satisfied" : "not satisfied") << "\n";
    }
    return kOk;
}

void add_inputs(CLI::App* cmd, Inputs& in, bool perturb) {
    cmd->add_option("network", in.network, "Boolean network in .bnet format")->required()->check(CLI::ExistingFile);
    cmd->add_option("--phenotype", in.phenotype, "Phenotype file (lines 'name = 0|1|*')")->check(CLI::ExistingFile);
    if (perturb) {
        cmd->add_option("--perturb", in.perturb, "Perturbable variables, one per line")->check(CLI::ExistingFile);
    }
    cmd->add_option("--caps", in.caps, "Enumeration caps, e.g. subspace=16,state=22,asp=24,dnf=1000,perturb=9");
}

const std::vector<std::string> kProblems{"mts1", "mts2", "mts3", "fix1", "fix2", "fix3"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Count minimal trap spaces and fixed points of Boolean networks", "trapcount"};
    app.require_subcommand(1);

    CountOptions count;
    auto* c = app.add_subcommand("count", "Count solutions of one of the six problems");
    add_inputs(c, count.in, true);
    c->add_option("--problem", count.problem, "mts1|mts2|mts3|fix1|fix2|fix3")
        ->transform(CLI::IsMember(kProblems, CLI::ignore_case));
    c->add_option("--mode", count.mode, "exact|approx|auto")->check(CLI::IsMember({"exact", "approx", "auto"}));
    c->add_option("--epsilon", count.epsilon, "Tolerance of the approximate counter");
    c->add_option("--delta", count.delta, "Confidence parameter of the approximate counter");
    c->add_option("--seed", count.seed, "Seed of the approximate counter");
    c->add_option("--budget", count.budget, "Conflict budget per SAT call (0 = unlimited)");
    c->add_option("--format", count.format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));
    c->add_option("--external-count", count.external, "Record a count produced by an external counter");
    c->add_option("--emit", count.emit, "Where to write the encoding when counting is delegated");

    EncodeOptions encode;
    auto* e = app.add_subcommand("encode", "Write the ASP or CNF encoding of a problem");
    add_inputs(e, encode.in, true);
    e->add_option("--problem", encode.problem, "mts1|mts2|mts3|fix1|fix2|fix3")
        ->transform(CLI::IsMember(kProblems, CLI::ignore_case));
    e->add_option("--target", encode.target, "asp|cnf")->check(CLI::IsMember({"asp", "cnf"}));
    e->add_option("-o,--output", encode.output, "Output file (default: standard output)");

    VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "Check one subspace against the network");
    add_inputs(v, verify.in, false);
    v->add_option("--subspace", verify.subspace, "Subspace over 0, 1 and * in variable order")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (c->parsed()) return cmd_count(count, out, err);
        if (e->parsed()) return cmd_encode(encode, out);
        return cmd_verify(verify, out);
    } catch (const CapExceeded& ex) {
        err << "error: " << ex.what() << "\n";
        return kCapExceeded;
    } catch (const BudgetExhausted& ex) {
        err << "error: " << ex.what() << "\n";
        return kBudgetExhausted;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& ex) {
        err << "internal error: " << ex.what() << "\n";
        return kInputError;
    }
}

}  // namespace trapcount::cli
