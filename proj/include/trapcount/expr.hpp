#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "trapcount/trivalue.hpp"

namespace trapcount {

/// Immutable Boolean expression over named variables. Copies share
/// structure. And/Or are n-ary and flattened on construction, so an And
/// never has an And child (likewise for Or), and a single-operand And/Or
/// collapses to that operand.
class Expr {
public:
    enum class Kind : std::uint8_t { Const, Var, Not, And, Or };

    /// The constant false.
    Expr();

    static Expr constant(bool value);
    static Expr var(std::string name);
    static Expr negate(Expr operand);
    static Expr conj(std::vector<Expr> operands);
    static Expr disj(std::vector<Expr> operands);

    Kind kind() const noexcept;
    bool is_const() const noexcept { return kind() == Kind::Const; }
    bool is_var() const noexcept { return kind() == Kind::Var; }
    /// A variable or a negated variable.
    bool is_literal() const noexcept;

    bool value() const;                   // Const only
    const std::string& name() const;      // Var only
    std::span<const Expr> operands() const noexcept;  // Not has exactly one

    /// Canonical .bnet rendering: And/Or are always parenthesized.
    std::string to_string() const;

    friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr nary(Kind kind, std::vector<Expr> operands);

    std::shared_ptr<const Node> node_;
};

/// Variables mentioned in the expression, in order of first occurrence.
std::vector<std::string> variables(const Expr& e);

/// Kleene evaluation. Throws trapcount::Error naming any variable missing
/// from the assignment.
Tri eval3(const Expr& e, const std::map<std::string, Tri, std::less<>>& assignment);

/// Two-valued evaluation; same error behaviour as eval3.
bool eval2(const Expr& e, const std::map<std::string, bool, std::less<>>& assignment);

/// Number of nodes in the expression tree.
std::size_t size(const Expr& e);

}  // namespace trapcount
