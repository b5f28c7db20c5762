#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trapcount/expr.hpp"
#include "trapcount/trivalue.hpp"

namespace trapcount {

/// A Boolean state, one bit per network variable in declaration order.
class State {
public:
    State() = default;
    explicit State(std::vector<bool> bits) : bits_(std::move(bits)) {}

    /// Parses a string over {0,1}. Throws ParseError otherwise.
    static State from_string(std::string_view text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i]; }
    std::string to_string() const;

    friend auto operator<=>(const State&, const State&) = default;
    friend bool operator==(const State&, const State&) = default;

private:
    std::vector<bool> bits_;
};

/// Assignment of every network variable to {0, 1, *}, in declaration order.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::vector<Tri> values) : values_(std::move(values)) {}

    /// The all-* subspace over n variables.
    static Subspace full(std::size_t n) { return Subspace(std::vector<Tri>(n, Tri::Star)); }
    /// Parses a string over {0,1,*}. Throws ParseError otherwise.
    static Subspace from_string(std::string_view text);
    static Subspace from_state(const State& s);

    std::size_t size() const noexcept { return values_.size(); }
    Tri operator[](std::size_t i) const { return values_[i]; }
    std::span<const Tri> values() const noexcept { return values_; }
    std::string to_string() const;

    std::size_t free_count() const noexcept;
    bool is_star_free() const noexcept { return free_count() == 0; }
    bool contains(const State& s) const;
    /// The state set S[m], in lexicographic order; 2^free_count() states.
    std::vector<State> expand() const;

    friend auto operator<=>(const Subspace&, const Subspace&) = default;
    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::vector<Tri> values_;
};

/// Pointwise information order: a <=_s b iff a(v) <=_s b(v) for every v,
/// i.e. S[a] is a subset of S[b].
bool leq_info(const Subspace& a, const Subspace& b);

/// Ordered variables with one update function each. Immutable after
/// construction; every referenced variable must be declared.
class BooleanNetwork {
public:
    BooleanNetwork() = default;
    /// Throws trapcount::Error on duplicate or undeclared variables.
    explicit BooleanNetwork(std::vector<std::pair<std::string, Expr>> functions);

    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }
    std::span<const std::string> variables() const noexcept { return names_; }
    const std::string& name(std::size_t v) const { return names_.at(v); }
    const Expr& function(std::size_t v) const { return functions_.at(v); }
    /// Throws trapcount::Error on an unknown name.
    const Expr& function(std::string_view name) const;
    std::optional<std::size_t> index_of(std::string_view name) const;
    /// Like index_of, but throws trapcount::Error naming the variable.
    std::size_t require(std::string_view name) const;

    /// f_v evaluated in Kleene logic over a subspace.
    Tri update(std::size_t v, const Subspace& m) const;
    /// f_v evaluated over a Boolean state.
    bool update(std::size_t v, const State& s) const;

    /// Fast paths for enumeration (at most 64 variables): a subspace is a
    /// pair of bit masks (fixed variables, values of fixed variables); a
    /// state is a bit mask. Bit i belongs to variable i.
    Tri update_packed(std::size_t v, std::uint64_t fixed, std::uint64_t value) const;
    bool update_bits(std::size_t v, std::uint64_t bits) const;

    /// Indices of the variables f_v mentions, ascending.
    std::span<const std::size_t> support(std::size_t v) const { return supports_.at(v); }

    /// Copy with f_v replaced.
    BooleanNetwork with_function(std::size_t v, Expr f) const;

    friend bool operator==(const BooleanNetwork& a, const BooleanNetwork& b) {
        return a.names_ == b.names_ && a.functions_ == b.functions_;
    }

private:
    struct Node {
        Expr::Kind kind;
        std::uint32_t arg;    // variable index, constant value, or first child slot
        std::uint32_t count;  // number of children
    };
    struct Compiled {
        std::vector<Node> nodes;           // nodes[0] is the root
        std::vector<std::uint32_t> kids;   // child node indices
    };

    static Compiled compile(const Expr& e, const std::unordered_map<std::string, std::size_t>& index);
    template <typename V, typename Leaf>
    static V run(const Compiled& c, std::uint32_t node, const Leaf& leaf);

    std::vector<std::string> names_;
    std::vector<Expr> functions_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Compiled> compiled_;
    std::vector<std::vector<std::size_t>> supports_;
};

/// Kleene evaluation of an arbitrary expression over a subspace of f.
/// Throws trapcount::Error naming a variable not declared in f.
Tri eval3(const Expr& e, const BooleanNetwork& f, const Subspace& m);

}  // namespace trapcount
