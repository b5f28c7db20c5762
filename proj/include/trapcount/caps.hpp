#pragma once

#include <cstddef>
#include <string_view>

namespace trapcount {

/// Limits on brute-force work. Exceeding any of them raises CapExceeded;
/// nothing is ever silently truncated.
struct Caps {
    std::size_t subspace_vars = 14;      // 3^n subspace enumeration
    std::size_t state_vars = 20;         // 2^n state enumeration
    std::size_t asp_atoms = 22;          // answer-set oracle interpretations
    std::size_t dnf_terms = 100000;      // DNF distribution
    std::size_t perturbation_vars = 8;   // 3^|X| per-perturbation loops
};

/// Applies overrides of the form "subspace=16,state=22,asp=24,dnf=1000,perturb=9".
/// Throws trapcount::Error on an unknown key or malformed value.
Caps parse_caps(std::string_view overrides, Caps base = {});

/// Applies TRAPCOUNT_CAPS from the environment, if set.
Caps caps_from_env(Caps base = {});

}  // namespace trapcount
