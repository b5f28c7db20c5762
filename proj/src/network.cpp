#include "trapcount/network.hpp"

#include <algorithm>

#include "trapcount/error.hpp"

namespace trapcount {

State State::from_string(std::string_view text) {
    std::vector<bool> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw ParseError("expected '0' or '1' in state", 1, i + 1);
        }
        bits.push_back(text[i] == '1');
    }
    return State(std::move(bits));
}

std::string State::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (bool b : bits_) out.push_back(b ? '1' : '0');
    return out;
}

Subspace Subspace::from_string(std::string_view text) {
    std::vector<Tri> values;
    values.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto t = tri_from_char(text[i]);
        if (!t) throw ParseError("expected '0', '1' or '*' in subspace", 1, i + 1);
        values.push_back(*t);
    }
    return Subspace(std::move(values));
}

Subspace Subspace::from_state(const State& s) {
    std::vector<Tri> values(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) values[i] = to_tri(s[i]);
    return Subspace(std::move(values));
}

std::string Subspace::to_string() const {
    std::string out;
    out.reserve(values_.size());
    for (Tri t : values_) out.push_back(to_char(t));
    return out;
}

std::size_t Subspace::free_count() const noexcept {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), Tri::Star));
}

bool Subspace::contains(const State& s) const {
    if (s.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        if (values_[i] != Tri::Star && values_[i] != to_tri(s[i])) return false;
    }
    return true;
}

std::vector<State> Subspace::expand() const {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < size(); ++i) {
        if (values_[i] == Tri::Star) free.push_back(i);
    }
    if (free.size() >= 63) throw CapExceeded("subspace too large to expand");
    std::vector<bool> base(size());
    for (std::size_t i = 0; i < size(); ++i) base[i] = values_[i] == Tri::One;
    std::vector<State> out;
    out.reserve(std::size_t{1} << free.size());
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t k = 0; k < total; ++k) {
        auto bits = base;
        // Most significant free variable first, so the result is lexicographic.
        for (std::size_t j = 0; j < free.size(); ++j) {
            bits[free[j]] = (k >> (free.size() - 1 - j)) & 1U;
        }
        out.emplace_back(std::move(bits));
    }
    return out;
}

bool leq_info(const Subspace& a, const Subspace& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!leq_info(a[i], b[i])) return false;
    }
    return true;
}

BooleanNetwork::BooleanNetwork(std::vector<std::pair<std::string, Expr>> functions) {
    names_.reserve(functions.size());
    functions_.reserve(functions.size());
    for (auto& [name, f] : functions) {
        if (name.empty()) throw Error("variable name must be nonempty");
        if (!index_.emplace(name, names_.size()).second) {
            throw Error("duplicate variable '" + name + "'");
        }
        names_.push_back(name);
        functions_.push_back(std::move(f));
    }
    compiled_.reserve(functions_.size());
    for (std::size_t v = 0; v < functions_.size(); ++v) {
        compiled_.push_back(compile(functions_[v], index_));
        std::vector<std::size_t> support;
        for (const auto& name : trapcount::variables(functions_[v])) support.push_back(index_.at(name));
        std::sort(support.begin(), support.end());
        supports_.push_back(std::move(support));
    }
}

const Expr& BooleanNetwork::function(std::string_view name) const { return functions_[require(name)]; }

std::optional<std::size_t> BooleanNetwork::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t BooleanNetwork::require(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw Error("unknown variable '" + std::string(name) + "'");
    return *i;
}

BooleanNetwork::Compiled BooleanNetwork::compile(
    const Expr& e, const std::unordered_map<std::string, std::size_t>& index) {
    Compiled c;
    // Breadth-first layout: every node's children occupy a contiguous run.
    std::vector<const Expr*> pending{&e};
    c.nodes.push_back({e.kind(), 0, 0});
    for (std::size_t i = 0; i < pending.size(); ++i) {
        const Expr& cur = *pending[i];
        Node& node = c.nodes[i];
        switch (cur.kind()) {
            case Expr::Kind::Const: node.arg = cur.value() ? 1 : 0; break;
            case Expr::Kind::Var: {
                auto it = index.find(cur.name());
                if (it == index.end()) {
                    throw Error("undeclared variable '" + cur.name() + "'");
                }
                node.arg = static_cast<std::uint32_t>(it->second);
                break;
            }
            default: {
                auto ops = cur.operands();
                c.nodes[i].arg = static_cast<std::uint32_t>(c.kids.size());
                c.nodes[i].count = static_cast<std::uint32_t>(ops.size());
                for (const auto& op : ops) {
                    c.kids.push_back(static_cast<std::uint32_t>(c.nodes.size()));
                    c.nodes.push_back({op.kind(), 0, 0});
                    pending.push_back(&op);
                }
            }
        }
    }
    return c;
}

template <typename V, typename Leaf>
V BooleanNetwork::run(const Compiled& c, std::uint32_t index, const Leaf& leaf) {
    const Node& node = c.nodes[index];
    switch (node.kind) {
        case Expr::Kind::Const:
            if constexpr (std::is_same_v<V, Tri>) return to_tri(node.arg != 0);
            else return node.arg != 0;
        case Expr::Kind::Var: return leaf(node.arg);
        case Expr::Kind::Not: return !run<V>(c, c.kids[node.arg], leaf);
        case Expr::Kind::And: {
            V acc = run<V>(c, c.kids[node.arg], leaf);
            for (std::uint32_t k = 1; k < node.count; ++k) {
                if (acc == V{}) break;  // false / Zero absorbs
                acc = acc & run<V>(c, c.kids[node.arg + k], leaf);
            }
            return acc;
        }
        case Expr::Kind::Or: {
            V acc = run<V>(c, c.kids[node.arg], leaf);
            for (std::uint32_t k = 1; k < node.count; ++k) {
                if constexpr (std::is_same_v<V, Tri>) {
                    if (acc == Tri::One) break;
                } else {
                    if (acc) break;
                }
                acc = acc | run<V>(c, c.kids[node.arg + k], leaf);
            }
            return acc;
        }
    }
    return V{};
}

Tri BooleanNetwork::update(std::size_t v, const Subspace& m) const {
    return run<Tri>(compiled_.at(v), 0, [&](std::uint32_t i) { return m[i]; });
}

bool BooleanNetwork::update(std::size_t v, const State& s) const {
    return run<bool>(compiled_.at(v), 0, [&](std::uint32_t i) { return s[i]; });
}

Tri BooleanNetwork::update_packed(std::size_t v, std::uint64_t fixed, std::uint64_t value) const {
    return run<Tri>(compiled_[v], 0, [&](std::uint32_t i) {
        if (!((fixed >> i) & 1U)) return Tri::Star;
        return to_tri((value >> i) & 1U);
    });
}

bool BooleanNetwork::update_bits(std::size_t v, std::uint64_t bits) const {
    return run<bool>(compiled_[v], 0, [&](std::uint32_t i) { return ((bits >> i) & 1U) != 0; });
}

BooleanNetwork BooleanNetwork::with_function(std::size_t v, Expr f) const {
    std::vector<std::pair<std::string, Expr>> fs;
    fs.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        fs.emplace_back(names_[i], i == v ? f : functions_[i]);
    }
    return BooleanNetwork(std::move(fs));
}

Tri eval3(const Expr& e, const BooleanNetwork& f, const Subspace& m) {
    switch (e.kind()) {
        case Expr::Kind::Const: return to_tri(e.value());
        case Expr::Kind::Var: return m[f.require(e.name())];
        case Expr::Kind::Not: return !eval3(e.operands().front(), f, m);
        case Expr::Kind::And: {
            Tri acc = Tri::One;
            for (const auto& op : e.operands()) acc = acc & eval3(op, f, m);
            return acc;
        }
        case Expr::Kind::Or: {
            Tri acc = Tri::Zero;
            for (const auto& op : e.operands()) acc = acc | eval3(op, f, m);
            return acc;
        }
    }
    return Tri::Zero;
}

}  // namespace trapcount
