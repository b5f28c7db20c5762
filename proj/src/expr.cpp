#include "trapcount/expr.hpp"

#include <unordered_set>

#include "trapcount/error.hpp"

namespace trapcount {

struct Expr::Node {
    Kind kind = Kind::Const;
    bool value = false;
    std::string name;
    std::vector<Expr> operands;
};

Expr::Expr() : Expr(Expr::constant(false)) {}

Expr Expr::constant(bool value) {
    static const auto f = std::make_shared<const Node>(Node{Kind::Const, false, {}, {}});
    static const auto t = std::make_shared<const Node>(Node{Kind::Const, true, {}, {}});
    return Expr(value ? t : f);
}

Expr Expr::var(std::string name) {
    if (name.empty()) throw Error("variable name must be nonempty");
    return Expr(std::make_shared<const Node>(Node{Kind::Var, false, std::move(name), {}}));
}

Expr Expr::negate(Expr operand) {
    std::vector<Expr> ops;
    ops.push_back(std::move(operand));
    return Expr(std::make_shared<const Node>(Node{Kind::Not, false, {}, std::move(ops)}));
}

Expr Expr::conj(std::vector<Expr> operands) { return nary(Kind::And, std::move(operands)); }

Expr Expr::disj(std::vector<Expr> operands) { return nary(Kind::Or, std::move(operands)); }

Expr Expr::nary(Kind kind, std::vector<Expr> operands) {
    if (operands.empty()) {
        throw Error(kind == Kind::And ? "conjunction needs at least one operand"
                                      : "disjunction needs at least one operand");
    }
    std::vector<Expr> flat;
    flat.reserve(operands.size());
    for (auto& op : operands) {
        if (op.kind() == kind) {
            for (const auto& inner : op.operands()) flat.push_back(inner);
        } else {
            flat.push_back(std::move(op));
        }
    }
    if (flat.size() == 1) return flat.front();
    return Expr(std::make_shared<const Node>(Node{kind, false, {}, std::move(flat)}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

bool Expr::is_literal() const noexcept {
    return kind() == Kind::Var || (kind() == Kind::Not && node_->operands.front().is_var());
}

bool Expr::value() const {
    if (kind() != Kind::Const) throw Error("value() on non-constant expression");
    return node_->value;
}

const std::string& Expr::name() const {
    if (kind() != Kind::Var) throw Error("name() on non-variable expression");
    return node_->name;
}

std::span<const Expr> Expr::operands() const noexcept { return node_->operands; }

std::string Expr::to_string() const {
    switch (kind()) {
        case Kind::Const: return node_->value ? "1" : "0";
        case Kind::Var: return node_->name;
        case Kind::Not: return "!" + node_->operands.front().to_string();
        case Kind::And:
        case Kind::Or: {
            const char* sep = kind() == Kind::And ? " & " : " | ";
            std::string out = "(";
            bool first = true;
            for (const auto& op : node_->operands) {
                if (!first) out += sep;
                first = false;
                out += op.to_string();
            }
            return out + ")";
        }
    }
    return {};
}

bool operator==(const Expr& lhs, const Expr& rhs) {
    if (lhs.node_ == rhs.node_) return true;
    if (lhs.kind() != rhs.kind()) return false;
    switch (lhs.kind()) {
        case Expr::Kind::Const: return lhs.node_->value == rhs.node_->value;
        case Expr::Kind::Var: return lhs.node_->name == rhs.node_->name;
        default: return lhs.node_->operands == rhs.node_->operands;
    }
}

namespace {

void collect_variables(const Expr& e, std::vector<std::string>& out,
                       std::unordered_set<std::string>& seen) {
    if (e.is_var()) {
        if (seen.insert(e.name()).second) out.push_back(e.name());
        return;
    }
    for (const auto& op : e.operands()) collect_variables(op, out, seen);
}

template <typename V, typename Map>
V evaluate(const Expr& e, const Map& assignment) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            if constexpr (std::is_same_v<V, Tri>) return to_tri(e.value());
            else return e.value();
        case Expr::Kind::Var: {
            auto it = assignment.find(e.name());
            if (it == assignment.end()) throw Error("unknown variable '" + e.name() + "'");
            return it->second;
        }
        case Expr::Kind::Not: return !evaluate<V>(e.operands().front(), assignment);
        case Expr::Kind::And: {
            V acc = evaluate<V>(e.operands().front(), assignment);
            for (const auto& op : e.operands().subspan(1)) acc = acc & evaluate<V>(op, assignment);
            return acc;
        }
        case Expr::Kind::Or: {
            V acc = evaluate<V>(e.operands().front(), assignment);
            for (const auto& op : e.operands().subspan(1)) acc = acc | evaluate<V>(op, assignment);
            return acc;
        }
    }
    return V{};
}

}  // namespace

std::vector<std::string> variables(const Expr& e) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    collect_variables(e, out, seen);
    return out;
}

Tri eval3(const Expr& e, const std::map<std::string, Tri, std::less<>>& assignment) {
    return evaluate<Tri>(e, assignment);
}

bool eval2(const Expr& e, const std::map<std::string, bool, std::less<>>& assignment) {
    return evaluate<bool>(e, assignment);
}

std::size_t size(const Expr& e) {
    std::size_t n = 1;
    for (const auto& op : e.operands()) n += size(op);
    return n;
}

}  // namespace trapcount
