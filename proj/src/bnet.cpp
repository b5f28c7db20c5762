#include "trapcount/bnet.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "trapcount/error.hpp"

namespace trapcount {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_identifier(std::string_view s) {
    return !s.empty() && is_ident_start(s.front()) && std::all_of(s.begin(), s.end(), is_ident_char);
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// A logical line with its 1-based number; `text` has comments and the
// trailing '\r' removed but keeps leading whitespace so columns stay exact.
struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const bool blank = std::all_of(line.begin(), line.end(),
                                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) out.push_back({number, line});
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::size_t column_of(std::string_view line, std::string_view part) {
    return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

struct Reference {
    std::string name;
    std::size_t line;
    std::size_t column;
};

// Recursive-descent parser for one expression:
//   or  := and ('|' and)*
//   and := not ('&' not)*
//   not := '!' not | '(' or ')' | constant | identifier
class ExprParser {
public:
    ExprParser(std::string_view line, std::size_t line_number, std::size_t offset,
               std::vector<Reference>& refs)
        : line_(line), number_(line_number), pos_(offset), refs_(refs) {}

    Expr parse() {
        Expr e = parse_or();
        skip_space();
        if (pos_ < line_.size()) fail("unexpected '" + std::string(1, line_[pos_]) + "'");
        return e;
    }

private:
    Expr parse_or() {
        std::vector<Expr> ops{parse_and()};
        while (accept('|')) ops.push_back(parse_and());
        return Expr::disj(std::move(ops));
    }

    Expr parse_and() {
        std::vector<Expr> ops{parse_not()};
        while (accept('&')) ops.push_back(parse_not());
        return Expr::conj(std::move(ops));
    }

    Expr parse_not() {
        skip_space();
        if (pos_ >= line_.size()) fail("unexpected end of expression");
        const char c = line_[pos_];
        if (c == '!') {
            ++pos_;
            return Expr::negate(parse_not());
        }
        if (c == '(') {
            ++pos_;
            Expr inner = parse_or();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if ((c == '0' || c == '1') && (pos_ + 1 >= line_.size() || !is_ident_char(line_[pos_ + 1]))) {
            ++pos_;
            return Expr::constant(c == '1');
        }
        if (is_ident_start(c)) {
            const std::size_t start = pos_;
            while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
            const auto word = line_.substr(start, pos_ - start);
            const auto lw = lower(word);
            if (lw == "true" || lw == "false") return Expr::constant(lw == "true");
            refs_.push_back({std::string(word), number_, start + 1});
            return Expr::var(std::string(word));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < line_.size() && line_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("syntax error: " + message, number_, pos_ + 1);
    }

    std::string_view line_;
    std::size_t number_;
    std::size_t pos_;
    std::vector<Reference>& refs_;
};

}  // namespace

BooleanNetwork parse_bnet(std::string_view text) {
    const auto lines = content_lines(text);
    std::vector<std::pair<std::string, Expr>> functions;
    std::unordered_set<std::string> declared;
    std::vector<Reference> refs;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto [number, line] = lines[i];
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("expected 'name, expression'", number, column_of(line, trim(line)));
        }
        const auto name = trim(line.substr(0, comma));
        if (i == 0 && lower(name) == "targets" && lower(trim(line.substr(comma + 1))) == "factors") {
            continue;
        }
        if (!is_identifier(name)) {
            throw ParseError("invalid variable name '" + std::string(name) + "'", number,
                             name.empty() ? 1 : column_of(line, name));
        }
        if (!declared.insert(std::string(name)).second) {
            throw ParseError("duplicate variable '" + std::string(name) + "'", number, column_of(line, name));
        }
        functions.emplace_back(std::string(name), ExprParser(line, number, comma + 1, refs).parse());
    }

    for (const auto& ref : refs) {
        if (!declared.count(ref.name)) {
            throw ParseError("undeclared variable '" + ref.name + "'", ref.line, ref.column);
        }
    }
    return BooleanNetwork(std::move(functions));
}

std::string render_bnet(const BooleanNetwork& f) {
    std::string out;
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (v != 0) out += '\n';
        out += f.name(v);
        out += ", ";
        out += f.function(v).to_string();
    }
    return out;
}

bool Phenotype::has_star() const noexcept {
    return std::any_of(traits.begin(), traits.end(), [](const Trait& t) { return t.value == Tri::Star; });
}

void Phenotype::validate(const BooleanNetwork& f) const {
    for (const auto& t : traits) {
        if (!f.index_of(t.variable)) {
            throw Error("phenotype refers to undeclared variable '" + t.variable + "'");
        }
    }
}

bool Phenotype::satisfied_by(const BooleanNetwork& f, const Subspace& m) const {
    return std::all_of(traits.begin(), traits.end(),
                       [&](const Trait& t) { return m[f.require(t.variable)] == t.value; });
}

bool Phenotype::satisfied_by(const BooleanNetwork& f, const State& s) const {
    return satisfied_by(f, Subspace::from_state(s));
}

Phenotype parse_phenotype(std::string_view text) {
    Phenotype out;
    std::unordered_set<std::string> seen;
    for (const auto& [number, line] : content_lines(text)) {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'name = 0|1|*'", number, column_of(line, trim(line)));
        }
        const auto name = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!is_identifier(name)) {
            throw ParseError("invalid variable name '" + std::string(name) + "'", number,
                             name.empty() ? 1 : column_of(line, name));
        }
        if (value.size() != 1 || !tri_from_char(value.front())) {
            throw ParseError("unknown value '" + std::string(value) + "' (expected 0, 1 or *)", number,
                             value.empty() ? eq + 2 : column_of(line, value));
        }
        if (!seen.insert(std::string(name)).second) {
            throw ParseError("duplicate trait for '" + std::string(name) + "'", number, column_of(line, name));
        }
        out.traits.push_back({std::string(name), *tri_from_char(value.front())});
    }
    return out;
}

void PerturbationSet::validate(const BooleanNetwork& f) const {
    for (const auto& name : names) {
        if (!f.index_of(name)) throw Error("perturbable variable '" + name + "' is not in the network");
    }
}

PerturbationSet parse_perturbables(std::string_view text) {
    PerturbationSet out;
    std::unordered_set<std::string> seen;
    for (const auto& [number, line] : content_lines(text)) {
        const auto name = trim(line);
        if (!is_identifier(name)) {
            throw ParseError("invalid variable name '" + std::string(name) + "'", number, column_of(line, name));
        }
        if (!seen.insert(std::string(name)).second) {
            throw ParseError("duplicate perturbable variable '" + std::string(name) + "'", number,
                             column_of(line, name));
        }
        out.names.emplace_back(name);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace trapcount
