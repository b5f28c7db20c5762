#include "trapcount/normal_form.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trapcount/error.hpp"

namespace trapcount {

namespace {

Expr nnf(const Expr& e, bool negated) {
    switch (e.kind()) {
        case Expr::Kind::Const: return Expr::constant(e.value() != negated);
        case Expr::Kind::Var: return negated ? Expr::negate(e) : e;
        case Expr::Kind::Not: return nnf(e.operands().front(), !negated);
        case Expr::Kind::And:
        case Expr::Kind::Or: {
            std::vector<Expr> ops;
            ops.reserve(e.operands().size());
            for (const auto& op : e.operands()) ops.push_back(nnf(op, negated));
            const bool conj = (e.kind() == Expr::Kind::And) != negated;
            return conj ? Expr::conj(std::move(ops)) : Expr::disj(std::move(ops));
        }
    }
    return e;
}

// Literal = (variable, polarity); a term is kept sorted by variable name.
using Literal = std::pair<std::string, bool>;
using Term = std::vector<Literal>;

// Merges two terms; false if they contain complementary literals.
bool merge(const Term& a, const Term& b, Term& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            if (a[i].second != b[j].second) return false;
            out.push_back(a[i]);
            ++i;
            ++j;
        }
    }
    return true;
}

class DnfBuilder {
public:
    explicit DnfBuilder(std::size_t max_terms) : max_terms_(max_terms) {}

    std::vector<Term> build(const Expr& e) {
        switch (e.kind()) {
            case Expr::Kind::Const:
                return e.value() ? std::vector<Term>{Term{}} : std::vector<Term>{};
            case Expr::Kind::Var: return {Term{{e.name(), true}}};
            case Expr::Kind::Not: return {Term{{e.operands().front().name(), false}}};
            case Expr::Kind::Or: {
                std::vector<Term> out;
                for (const auto& op : e.operands()) {
                    auto part = build(op);
                    out.insert(out.end(), std::make_move_iterator(part.begin()),
                               std::make_move_iterator(part.end()));
                    dedupe(out);
                }
                return out;
            }
            case Expr::Kind::And: {
                std::vector<Term> acc{Term{}};
                Term merged;
                for (const auto& op : e.operands()) {
                    const auto part = build(op);
                    std::vector<Term> next;
                    for (const auto& a : acc) {
                        for (const auto& b : part) {
                            if (merge(a, b, merged)) next.push_back(merged);
                        }
                        check(next.size());
                    }
                    dedupe(next);
                    acc = std::move(next);
                    if (acc.empty()) break;
                }
                return acc;
            }
        }
        return {};
    }

private:
    void check(std::size_t n) const {
        if (n > max_terms_) {
            throw CapExceeded("DNF exceeds the term cap of " + std::to_string(max_terms_));
        }
    }

    void dedupe(std::vector<Term>& terms) const {
        std::set<Term> seen;
        std::vector<Term> out;
        out.reserve(terms.size());
        for (auto& t : terms) {
            if (seen.insert(t).second) out.push_back(std::move(t));
        }
        terms = std::move(out);
        check(terms.size());
    }

    std::size_t max_terms_;
};

struct Occurrences {
    std::set<std::string> pos;
    std::set<std::string> neg;
};

void collect(const Expr& e, Occurrences& occ) {
    if (e.is_var()) {
        occ.pos.insert(e.name());
    } else if (e.kind() == Expr::Kind::Not) {
        occ.neg.insert(e.operands().front().name());
    } else {
        for (const auto& op : e.operands()) collect(op, occ);
    }
}

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.count(x) != 0; });
}

bool safe_nnf(const Expr& e) {
    if (e.kind() == Expr::Kind::And) {
        std::vector<Occurrences> occ(e.operands().size());
        for (std::size_t i = 0; i < occ.size(); ++i) collect(e.operands()[i], occ[i]);
        for (std::size_t i = 0; i < occ.size(); ++i) {
            for (std::size_t j = 0; j < occ.size(); ++j) {
                if (i != j && intersects(occ[i].pos, occ[j].neg)) return false;
            }
        }
    }
    return std::all_of(e.operands().begin(), e.operands().end(), safe_nnf);
}

}  // namespace

Expr to_nnf(const Expr& e) { return nnf(e, false); }

Expr fold_constants(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Const:
        case Expr::Kind::Var: return e;
        case Expr::Kind::Not: {
            Expr inner = fold_constants(e.operands().front());
            return inner.is_const() ? Expr::constant(!inner.value()) : Expr::negate(std::move(inner));
        }
        case Expr::Kind::And:
        case Expr::Kind::Or: {
            // And: 0 absorbs, 1 is neutral. Or: the reverse.
            const bool absorbing = e.kind() == Expr::Kind::Or;
            std::vector<Expr> ops;
            for (const auto& op : e.operands()) {
                Expr folded = fold_constants(op);
                if (folded.is_const()) {
                    if (folded.value() == absorbing) return Expr::constant(absorbing);
                    continue;
                }
                ops.push_back(std::move(folded));
            }
            if (ops.empty()) return Expr::constant(!absorbing);
            return absorbing ? Expr::disj(std::move(ops)) : Expr::conj(std::move(ops));
        }
    }
    return e;
}

Expr to_dnf(const Expr& e, std::size_t max_terms) {
    const auto terms = DnfBuilder(max_terms).build(to_nnf(e));
    if (terms.empty()) return Expr::constant(false);
    std::vector<Expr> disjuncts;
    disjuncts.reserve(terms.size());
    for (const auto& t : terms) {
        if (t.empty()) return Expr::constant(true);
        std::vector<Expr> lits;
        lits.reserve(t.size());
        for (const auto& [name, positive] : t) {
            lits.push_back(positive ? Expr::var(name) : Expr::negate(Expr::var(name)));
        }
        disjuncts.push_back(Expr::conj(std::move(lits)));
    }
    return Expr::disj(std::move(disjuncts));
}

bool is_safe(const Expr& e) { return safe_nnf(to_nnf(e)); }

}  // namespace trapcount
