#include "trapcount/encode.hpp"

#include <algorithm>
#include <unordered_map>

#include "trapcount/error.hpp"
#include "trapcount/normal_form.hpp"

namespace trapcount {

Atom positive_atom(std::string_view variable) { return Atom{"p_" + std::string(variable)}; }
Atom negative_atom(std::string_view variable) { return Atom{"n_" + std::string(variable)}; }

std::string knockout_variable(std::string_view v) { return std::string(v) + "__k"; }
std::string overexpression_variable(std::string_view v) { return std::string(v) + "__o"; }

namespace {

void push_unique(std::vector<Atom>& body, Atom a) {
    if (std::find(body.begin(), body.end(), a) == body.end()) body.push_back(std::move(a));
}

// Holds the global auxiliary counter shared by every rule of one program.
class AspEncoder {
public:
    AspEncoder(Target target, const Caps& caps) : target_(target), caps_(caps) {}

    AspProgram run(const BooleanNetwork& f) {
        for (std::size_t v = 0; v < f.size(); ++v) {
            const auto& name = f.name(v);
            const Atom p = positive_atom(name);
            const Atom n = negative_atom(name);
            out_.add(Rule{{p, n}, {}, {}});
            define(p, f.function(v));
            define(n, Expr::negate(f.function(v)));
            if (target_ == Target::FixedPoints) out_.add(Rule{{}, {p, n}, {}});
        }
        return std::move(out_);
    }

private:
    // head :- gamma(phi), followed by the aux definitions gamma introduced.
    void define(const Atom& head, const Expr& formula) {
        Expr phi = fold_constants(to_nnf(formula));
        if (target_ == Target::MinimalTrapSpaces && !is_safe(phi)) phi = to_dnf(phi, caps_.dnf_terms);
        std::vector<Rule> pending;
        auto body = gamma(phi, pending);
        if (!body) return;
        out_.add(Rule{{head}, std::move(*body), {}});
        for (auto& r : pending) out_.add(std::move(r));
    }

    // Empty optional: the formula is constant false and yields no rule.
    std::optional<std::vector<Atom>> gamma(const Expr& phi, std::vector<Rule>& pending) {
        switch (phi.kind()) {
            case Expr::Kind::Const:
                if (!phi.value()) return std::nullopt;
                return std::vector<Atom>{};
            case Expr::Kind::Var: return std::vector<Atom>{positive_atom(phi.name())};
            case Expr::Kind::Not: return std::vector<Atom>{negative_atom(phi.operands().front().name())};
            case Expr::Kind::And: {
                std::vector<Atom> body;
                for (const auto& op : phi.operands()) {
                    auto part = gamma(op, pending);
                    if (!part) return std::nullopt;
                    for (auto& a : *part) push_unique(body, std::move(a));
                }
                return body;
            }
            case Expr::Kind::Or: {
                Atom aux{"aux_" + std::to_string(++aux_counter_)};
                for (const auto& op : phi.operands()) {
                    std::vector<Rule> nested;
                    auto part = gamma(op, nested);
                    if (!part) continue;
                    pending.push_back(Rule{{aux}, std::move(*part), {}});
                    for (auto& r : nested) pending.push_back(std::move(r));
                }
                return std::vector<Atom>{aux};
            }
        }
        return std::nullopt;
    }

    Target target_;
    Caps caps_;
    AspProgram out_;
    std::size_t aux_counter_ = 0;
};

// Tseitin literal for an expression without constants.
int tseitin(const Expr& e, const BooleanNetwork& f, CnfFormula& cnf) {
    switch (e.kind()) {
        case Expr::Kind::Var: return static_cast<int>(f.require(e.name()) + 1);
        case Expr::Kind::Not: return -tseitin(e.operands().front(), f, cnf);
        case Expr::Kind::And:
        case Expr::Kind::Or: {
            std::vector<int> kids;
            for (const auto& op : e.operands()) kids.push_back(tseitin(op, f, cnf));
            const int x = static_cast<int>(cnf.new_var());
            // And: x -> each kid, all kids -> x. Or is the dual.
            const int sign = e.kind() == Expr::Kind::And ? 1 : -1;
            std::vector<int> back{sign * x};
            for (int k : kids) {
                cnf.add_clause({-sign * x, sign * k});
                back.push_back(-sign * k);
            }
            cnf.add_clause(std::move(back));
            return x;
        }
        case Expr::Kind::Const: break;
    }
    throw Error("internal: constant reached Tseitin encoding");
}

}  // namespace

AspProgram encode_tsconj(const BooleanNetwork& f, const Caps& caps) {
    return AspEncoder(Target::MinimalTrapSpaces, caps).run(f);
}

AspProgram encode_fasp(const BooleanNetwork& f) { return AspEncoder(Target::FixedPoints, {}).run(f); }

AspProgram encode_phenotype(const Phenotype& beta, Target target, const BooleanNetwork& f) {
    beta.validate(f);
    AspProgram q;
    for (const auto& [v, e] : beta.traits) {
        const Atom p = positive_atom(v);
        const Atom n = negative_atom(v);
        switch (e) {
            case Tri::One:
                q.add(Rule{{}, {}, {p}});
                q.add(Rule{{}, {n}, {}});
                break;
            case Tri::Zero:
                q.add(Rule{{}, {p}, {}});
                q.add(Rule{{}, {}, {n}});
                break;
            case Tri::Star:
                if (target == Target::FixedPoints) {
                    throw Error("trait '" + v + " = *' cannot hold for a fixed point");
                }
                q.add(Rule{{}, {}, {p}});
                q.add(Rule{{}, {}, {n}});
                break;
        }
    }
    return q;
}

BooleanNetwork perturb_transform(const BooleanNetwork& f, const PerturbationSet& x) {
    x.validate(f);
    std::unordered_map<std::string, bool> perturbable;
    for (const auto& v : x.names) perturbable[v] = true;
    for (const auto& v : x.names) {
        for (const auto& helper : {knockout_variable(v), overexpression_variable(v)}) {
            if (f.index_of(helper)) {
                throw Error("helper variable '" + helper + "' collides with an existing variable");
            }
        }
    }

    std::vector<std::pair<std::string, Expr>> fs;
    fs.reserve(f.size() + 2 * x.size());
    for (std::size_t v = 0; v < f.size(); ++v) {
        const auto& name = f.name(v);
        if (!perturbable.count(name)) {
            fs.emplace_back(name, f.function(v));
            continue;
        }
        const Expr k = Expr::var(knockout_variable(name));
        const Expr o = Expr::var(overexpression_variable(name));
        fs.emplace_back(name, Expr::conj({Expr::negate(k), Expr::disj({o, f.function(v)})}));
    }
    for (const auto& name : x.names) {
        const Expr k = Expr::var(knockout_variable(name));
        const Expr o = Expr::var(overexpression_variable(name));
        fs.emplace_back(knockout_variable(name), k);
        fs.emplace_back(overexpression_variable(name), Expr::conj({o, Expr::negate(k)}));
    }
    return BooleanNetwork(std::move(fs));
}

ProjectionSet projection_atoms(const PerturbationSet& x) {
    ProjectionSet out;
    for (const auto& v : x.names) {
        for (auto helper : {knockout_variable(v), overexpression_variable(v)}) {
            out.atoms.push_back(positive_atom(helper));
            out.atoms.push_back(negative_atom(helper));
            out.sources.push_back(std::move(helper));
        }
    }
    return out;
}

std::optional<Subspace> decode_subspace(const BooleanNetwork& f, const Interpretation& m) {
    std::vector<Tri> values(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) {
        const bool p = m.count(positive_atom(f.name(v))) != 0;
        const bool n = m.count(negative_atom(f.name(v))) != 0;
        if (!p && !n) return std::nullopt;
        values[v] = p && n ? Tri::Star : (p ? Tri::One : Tri::Zero);
    }
    return Subspace(std::move(values));
}

CnfFormula encode_fix_cnf(const BooleanNetwork& f, const Phenotype& beta) {
    beta.validate(f);
    if (beta.has_star()) throw Error("a '*' trait cannot hold for a fixed point");

    CnfFormula cnf;
    cnf.num_vars = static_cast<std::uint32_t>(f.size());
    for (std::uint32_t v = 1; v <= cnf.num_vars; ++v) cnf.support.push_back(v);
    for (std::size_t v = 0; v < f.size(); ++v) {
        const int var = static_cast<int>(v + 1);
        const Expr folded = fold_constants(f.function(v));
        if (folded.is_const()) {
            cnf.add_clause({folded.value() ? var : -var});
            continue;
        }
        const int root = tseitin(folded, f, cnf);
        cnf.add_clause({-var, root});
        cnf.add_clause({var, -root});
    }
    for (const auto& [name, value] : beta.traits) {
        const int var = static_cast<int>(f.require(name) + 1);
        cnf.add_clause({value == Tri::One ? var : -var});
    }
    return cnf;
}

CnfFormula encode_perturbed_fix_cnf(const BooleanNetwork& f, const PerturbationSet& x, const Phenotype& beta) {
    const auto g = perturb_transform(f, x);
    CnfFormula cnf = encode_fix_cnf(g, beta);
    cnf.support.clear();
    for (const auto& name : projection_atoms(x).sources) {
        cnf.support.push_back(static_cast<std::uint32_t>(g.require(name) + 1));
    }
    return cnf;
}

std::string render_asp(const AspProgram& p, std::span<const Atom> show) {
    std::string out;
    for (const auto& r : p.rules()) {
        std::string line;
        for (std::size_t i = 0; i < r.head.size(); ++i) {
            if (i) line += " ; ";
            line += r.head[i].name;
        }
        std::vector<std::string> body;
        for (const auto& a : r.pos_body) body.push_back(a.name);
        for (const auto& a : r.neg_body) body.push_back("not " + a.name);
        if (!body.empty()) {
            line += r.head.empty() ? ":- " : " :- ";
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (i) line += ", ";
                line += body[i];
            }
        }
        out += line + ".\n";
    }
    for (const auto& a : show) out += "#show " + a.name + "/0.\n";
    return out;
}

}  // namespace trapcount
