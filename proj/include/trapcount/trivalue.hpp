#pragma once

#include <cstdint>
#include <optional>

namespace trapcount {

/// Kleene three-valued truth value. The enumerator order is the truth
/// order: Zero < Star < One.
enum class Tri : std::uint8_t { Zero = 0, Star = 1, One = 2 };

constexpr Tri to_tri(bool b) noexcept { return b ? Tri::One : Tri::Zero; }

constexpr Tri operator!(Tri a) noexcept {
    return a == Tri::Star ? Tri::Star : (a == Tri::One ? Tri::Zero : Tri::One);
}

// Conjunction and disjunction are min/max in the truth order.
constexpr Tri operator&(Tri a, Tri b) noexcept { return a < b ? a : b; }
constexpr Tri operator|(Tri a, Tri b) noexcept { return a < b ? b : a; }

/// Truth order: 0 <_t * <_t 1.
constexpr bool leq_truth(Tri a, Tri b) noexcept { return a <= b; }

/// Information order: 0 <_s *, 1 <_s *, nothing else strict.
constexpr bool leq_info(Tri a, Tri b) noexcept { return a == b || b == Tri::Star; }

constexpr char to_char(Tri a) noexcept {
    return a == Tri::Zero ? '0' : (a == Tri::One ? '1' : '*');
}

constexpr std::optional<Tri> tri_from_char(char c) noexcept {
    switch (c) {
        case '0': return Tri::Zero;
        case '1': return Tri::One;
        case '*': return Tri::Star;
        default: return std::nullopt;
    }
}

}  // namespace trapcount
