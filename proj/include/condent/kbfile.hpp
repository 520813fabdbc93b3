#pragma once

#include "condent/conditional.hpp"
#include "condent/entailment.hpp"
#include "condent/numeric.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace condent {

/// Malformed knowledge-base text; `line` is 1-based (0 when not tied to a line).
class KBSyntaxError : public std::runtime_error {
public:
    KBSyntaxError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class KBIOError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parsed knowledge-base file: the theory plus the source of each assessment.
struct KBFile {
    KnowledgeBase kb;
    std::vector<std::string> assessment_text;
    std::vector<std::size_t> assessment_line;
};

namespace detail {

/// Splits `P(body) rest` into body and rest.
inline std::pair<std::string_view, std::string_view> split_probability_call(std::string_view text) {
    text = trim(text);
    if (text.empty() || text[0] != 'P') throw ConditionalSyntaxError("expected P(...)");
    text.remove_prefix(1);
    text = trim(text);
    if (text.empty() || text[0] != '(') throw ConditionalSyntaxError("expected '(' after P");
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')' && --depth == 0) return {text.substr(1, i - 1), trim(text.substr(i + 1))};
    }
    throw ConditionalSyntaxError("unbalanced parentheses in P(...)");
}

inline ConditionalEvent conditional_from_body(std::string_view body, const Vocabulary& vocab) {
    auto [cons, ante] = split_conditional(body);
    if (cons.empty()) throw ConditionalSyntaxError("empty consequent in P(...)");
    Event a = parse_event(cons, vocab);
    Event b = ante ? parse_event(*ante, vocab) : Event::one(vocab);
    return make_conditional(a, b);
}

}  // namespace detail

/// Parses a query `P(f1 | f2)` or `P(f1)`.
inline ConditionalEvent parse_query(std::string_view text, const Vocabulary& vocab) {
    auto [body, rest] = detail::split_probability_call(text);
    if (!rest.empty()) throw ConditionalSyntaxError("unexpected text after query: '" + std::string(rest) + "'");
    return detail::conditional_from_body(body, vocab);
}

inline KBFile parse_kb(std::string_view text) {
    std::optional<Vocabulary> vocab;
    std::optional<KBFile> out;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        try {
            if (line.rfind("vars:", 0) == 0) {
                if (vocab) throw KBSyntaxError(lineno, "duplicate 'vars:' line");
                std::vector<std::string> names;
                std::string_view list = line.substr(5);
                while (!list.empty()) {
                    auto comma = list.find(',');
                    auto item = detail::trim(list.substr(0, comma));
                    if (item.empty()) throw KBSyntaxError(lineno, "empty variable name in 'vars:'");
                    names.emplace_back(item);
                    if (comma == std::string_view::npos) break;
                    list = list.substr(comma + 1);
                    if (detail::trim(list).empty()) throw KBSyntaxError(lineno, "trailing ',' in 'vars:'");
                }
                if (names.empty()) throw KBSyntaxError(lineno, "'vars:' declares no variables");
                vocab.emplace(std::move(names));
                out.emplace(KBFile{KnowledgeBase(*vocab), {}, {}});
                continue;
            }
            if (!vocab) throw KBSyntaxError(lineno, "'vars:' must come before assessments and evidence");

            if (line.rfind("evidence:", 0) == 0) {
                auto formula = detail::trim(line.substr(9));
                if (formula.empty()) throw KBSyntaxError(lineno, "empty evidence formula");
                out->kb.add_evidence(parse_event(formula, *vocab));
                continue;
            }
            if (line[0] == 'P') {
                auto [body, rest] = detail::split_probability_call(line);
                if (rest.empty() || rest[0] != '=') throw KBSyntaxError(lineno, "expected '= <probability>' after P(...)");
                Rational alpha = parse_rational(rest.substr(1));
                if (alpha < 0 || alpha > 1)
                    throw KBSyntaxError(lineno, "probability " + ScalarTraits<Rational>::to_string(alpha) + " outside [0,1]");
                auto ce = detail::conditional_from_body(body, *vocab);
                if (ce.antecedent().is_zero()) throw KBSyntaxError(lineno, "assessment conditions on the impossible event");
                out->kb.add(ce, alpha);
                out->assessment_text.emplace_back(line);
                out->assessment_line.push_back(lineno);
                continue;
            }
            throw KBSyntaxError(lineno, "unrecognized line '" + std::string(line) + "'");
        } catch (const KBSyntaxError&) {
            throw;
        } catch (const std::exception& e) {
            throw KBSyntaxError(lineno, e.what());
        }
    }
    if (!out) throw KBSyntaxError(0, "missing 'vars:' line");
    return std::move(*out);
}

inline KBFile load_kb_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw KBIOError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kb(buf.str());
}

inline KnowledgeBase load_kb(const std::string& path) { return load_kb_file(path).kb; }

}  // namespace condent
