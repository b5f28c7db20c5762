#include "trapcount/trap_spaces.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "trapcount/error.hpp"

namespace trapcount {

namespace {

// Packed subspace: bit i of `fixed` says variable i is fixed, bit i of
// `value` holds its value.
struct Packed {
    std::uint64_t fixed;
    std::uint64_t value;
};

constexpr std::size_t kPackedLimit = 62;

void check_cap(std::size_t n, std::size_t cap, const char* what) {
    if (n > cap || n > kPackedLimit) {
        throw CapExceeded("exact enumeration infeasible: " + std::to_string(n) + " variables exceeds the " +
                          what + " cap of " + std::to_string(std::min(cap, kPackedLimit)));
    }
}

// Kleene evaluation is exact unless it yields *: with repeated variables,
// as in (a & b) | (a & !b) at a=1, it can return * although f_v is
// constant on S[m]. Those cases are settled on the states of m restricted
// to the free variables f_v mentions.
bool constant_on(const BooleanNetwork& f, std::size_t v, Packed m, bool expected) {
    std::uint64_t free = 0;
    for (auto u : f.support(v)) {
        if (!((m.fixed >> u) & 1U)) free |= std::uint64_t{1} << u;
    }
    for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
        if (f.update_bits(v, m.value | sub) != expected) return false;
        if (sub == 0) break;
    }
    return true;
}

// A free variable never violates the trap condition since anything is
// <=_s *, so only fixed variables need checking.
bool is_trap_packed(const BooleanNetwork& f, Packed m) {
    for (std::uint64_t rest = m.fixed; rest != 0; rest &= rest - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(rest));
        const bool expected = (m.value >> v) & 1U;
        const Tri got = f.update_packed(v, m.fixed, m.value);
        if (got == to_tri(expected)) continue;
        if (got != Tri::Star || !constant_on(f, v, m, expected)) return false;
    }
    return true;
}

Subspace unpack(Packed m, std::size_t n) {
    std::vector<Tri> values(n, Tri::Star);
    for (std::size_t i = 0; i < n; ++i) {
        if ((m.fixed >> i) & 1U) values[i] = to_tri((m.value >> i) & 1U);
    }
    return Subspace(std::move(values));
}

template <typename Visit>
void for_each_trap_space(const BooleanNetwork& f, Visit&& visit) {
    const std::size_t n = f.size();
    const std::uint64_t all = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
    for (std::uint64_t fixed = 0;; ++fixed) {
        // Enumerate value as every submask of fixed.
        for (std::uint64_t value = fixed;; value = (value - 1) & fixed) {
            Packed m{fixed, value};
            if (is_trap_packed(f, m)) visit(m);
            if (value == 0) break;
        }
        if (fixed == all) break;
    }
}

}  // namespace

bool is_trap_space(const BooleanNetwork& f, const Subspace& m) {
    if (m.size() != f.size()) {
        throw Error("subspace has " + std::to_string(m.size()) + " entries but the network has " +
                    std::to_string(f.size()) + " variables");
    }
    if (f.size() <= kPackedLimit) {
        Packed p{0, 0};
        for (std::size_t v = 0; v < f.size(); ++v) {
            if (m[v] == Tri::Star) continue;
            p.fixed |= std::uint64_t{1} << v;
            if (m[v] == Tri::One) p.value |= std::uint64_t{1} << v;
        }
        return is_trap_packed(f, p);
    }
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (m[v] == Tri::Star) continue;
        const Tri got = f.update(v, m);
        if (got == m[v]) continue;
        if (got != Tri::Star) return false;
        std::vector<std::size_t> free;
        for (auto u : f.support(v)) {
            if (m[u] == Tri::Star) free.push_back(u);
        }
        if (free.size() >= 63) throw CapExceeded("exact enumeration infeasible: update function too wide");
        std::vector<bool> bits(f.size());
        for (std::size_t u = 0; u < f.size(); ++u) bits[u] = m[u] == Tri::One;
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << free.size()); ++k) {
            for (std::size_t j = 0; j < free.size(); ++j) bits[free[j]] = (k >> j) & 1U;
            if (f.update(v, State(bits)) != (m[v] == Tri::One)) return false;
        }
    }
    return true;
}

bool is_minimal_trap_space(const BooleanNetwork& f, const Subspace& m, const Caps& caps) {
    if (!is_trap_space(f, m)) return false;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == Tri::Star) free.push_back(i);
    }
    check_cap(free.size(), caps.subspace_vars, "subspace");
    // Odometer over {0,1,*}^free, skipping the all-* point (m itself).
    std::vector<Tri> values(m.values().begin(), m.values().end());
    std::vector<std::uint8_t> digits(free.size(), 0);
    while (true) {
        std::size_t k = 0;
        while (k < digits.size() && digits[k] == 2) {
            digits[k] = 0;
            ++k;
        }
        if (k == digits.size()) break;
        ++digits[k];
        bool all_star = true;
        for (std::size_t j = 0; j < free.size(); ++j) {
            // digit 0 -> *, 1 -> 0, 2 -> 1
            values[free[j]] = digits[j] == 0 ? Tri::Star : (digits[j] == 1 ? Tri::Zero : Tri::One);
            all_star = all_star && digits[j] == 0;
        }
        if (all_star) continue;
        if (is_trap_space(f, Subspace(values))) return false;
    }
    return true;
}

bool is_fixed_point(const BooleanNetwork& f, const Subspace& m) {
    return m.size() == f.size() && m.is_star_free() && is_trap_space(f, m);
}

std::vector<Subspace> trap_spaces(const BooleanNetwork& f, const Caps& caps) {
    check_cap(f.size(), caps.subspace_vars, "subspace");
    std::vector<Subspace> out;
    for_each_trap_space(f, [&](Packed m) { out.push_back(unpack(m, f.size())); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subspace> minimal_trap_spaces(const BooleanNetwork& f, const Caps& caps) {
    check_cap(f.size(), caps.subspace_vars, "subspace");
    std::vector<Packed> traps;
    for_each_trap_space(f, [&](Packed m) { traps.push_back(m); });
    // Fewest free variables first: anything strictly below m comes earlier.
    std::stable_sort(traps.begin(), traps.end(), [](Packed a, Packed b) {
        return std::popcount(a.fixed) > std::popcount(b.fixed);
    });
    // Every trap space contains a minimal one, so comparing against the
    // minimal trap spaces found so far decides minimality.
    std::vector<Packed> minimal;
    for (const Packed m : traps) {
        const bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](Packed low) {
            return (low.fixed & m.fixed) == m.fixed && (low.value & m.fixed) == m.value;
        });
        if (!dominated) minimal.push_back(m);
    }
    std::vector<Subspace> out;
    out.reserve(minimal.size());
    for (const Packed m : minimal) out.push_back(unpack(m, f.size()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<State> fixed_points(const BooleanNetwork& f, const Caps& caps) {
    check_cap(f.size(), caps.state_vars, "state");
    const std::size_t n = f.size();
    std::vector<State> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t s = 0; s < total; ++s) {
        bool stable = true;
        for (std::size_t v = 0; v < n && stable; ++v) {
            stable = f.update_bits(v, s) == (((s >> v) & 1U) != 0);
        }
        if (!stable) continue;
        std::vector<bool> bits(n);
        for (std::size_t v = 0; v < n; ++v) bits[v] = (s >> v) & 1U;
        out.emplace_back(std::move(bits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<State> successors(const BooleanNetwork& f, const State& s, UpdateScheme scheme,
                              const Caps& caps) {
    check_cap(f.size(), caps.state_vars, "state");
    if (s.size() != f.size()) throw Error("state length does not match the network");
    std::vector<bool> next(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) next[v] = f.update(v, s);
    if (scheme == UpdateScheme::Synchronous) return {State(std::move(next))};

    std::vector<State> out;
    for (std::size_t v = 0; v < f.size(); ++v) {
        std::vector<bool> bits(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) bits[i] = s[i];
        bits[v] = next[v];
        out.emplace_back(std::move(bits));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace trapcount
