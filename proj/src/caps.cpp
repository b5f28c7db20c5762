#include "trapcount/caps.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "trapcount/error.hpp"

namespace trapcount {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Caps parse_caps(std::string_view overrides, Caps base) {
    while (!overrides.empty()) {
        const auto comma = overrides.find(',');
        const auto item = trim(overrides.substr(0, comma));
        overrides = comma == std::string_view::npos ? std::string_view{} : overrides.substr(comma + 1);
        if (item.empty()) continue;

        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw Error("cap override '" + std::string(item) + "' lacks '='");
        const auto key = trim(item.substr(0, eq));
        const auto text = trim(item.substr(eq + 1));
        std::size_t value = 0;
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size()) {
            throw Error("cap override '" + std::string(key) + "' has a non-numeric value");
        }

        if (key == "subspace") base.subspace_vars = value;
        else if (key == "state") base.state_vars = value;
        else if (key == "asp") base.asp_atoms = value;
        else if (key == "dnf") base.dnf_terms = value;
        else if (key == "perturb") base.perturbation_vars = value;
        else throw Error("unknown cap '" + std::string(key) + "'");
    }
    return base;
}

Caps caps_from_env(Caps base) {
    const char* env = std::getenv("TRAPCOUNT_CAPS");
    return env ? parse_caps(env, base) : base;
}

}  // namespace trapcount
