#pragma once

#include "condent/formula.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace condent {

/// A conditional event (a|b), the coset a + Rb'. Stored normalized as (ab|b):
/// two conditionals are equal iff both stored events are equal.
class ConditionalEvent {
public:
    ConditionalEvent(const Event& consequent, const Event& antecedent)
        : numerator_(consequent & antecedent), antecedent_(antecedent) {}

    /// Embedding a -> (a|1).
    static ConditionalEvent of(const Event& a) { return ConditionalEvent(a, Event::one(a.vocabulary())); }

    const Event& numerator() const noexcept { return numerator_; }
    const Event& antecedent() const noexcept { return antecedent_; }
    /// a'b, the part of the antecedent where the conditional is false.
    Event refutation() const { return difference(antecedent_, numerator_); }
    const Vocabulary& vocabulary() const noexcept { return antecedent_.vocabulary(); }

    friend bool operator==(const ConditionalEvent&, const ConditionalEvent&) = default;

private:
    Event numerator_;
    Event antecedent_;
};

inline ConditionalEvent make_conditional(const Event& a, const Event& b) { return ConditionalEvent(a, b); }

/// The interval [ab, b -> a] of events making up the coset.
struct Interval {
    Event low;
    Event high;
};

inline Interval interval_of(const ConditionalEvent& ce) {
    return Interval{ce.numerator(), ~ce.antecedent() | ce.numerator()};
}

inline bool coset_contains(const ConditionalEvent& ce, const Event& x) {
    auto iv = interval_of(ce);
    return leq(iv.low, x) && leq(x, iv.high);
}

inline ConditionalEvent ce_not(const ConditionalEvent& p) { return ConditionalEvent(p.refutation(), p.antecedent()); }

/// (a|b)(c|d) = (ac | a'b v c'd v bd)
inline ConditionalEvent ce_and(const ConditionalEvent& p, const ConditionalEvent& q) {
    Event::require_same(p.antecedent(), q.antecedent());
    Event antecedent = p.refutation() | q.refutation() | (p.antecedent() & q.antecedent());
    return ConditionalEvent(p.numerator() & q.numerator(), antecedent);
}

/// (a|b) v (c|d) = (a v c | ab v cd v bd)
inline ConditionalEvent ce_or(const ConditionalEvent& p, const ConditionalEvent& q) {
    Event::require_same(p.antecedent(), q.antecedent());
    Event antecedent = p.numerator() | q.numerator() | (p.antecedent() & q.antecedent());
    return ConditionalEvent(p.numerator() | q.numerator(), antecedent);
}

/// (a|b) <= (c|d) iff ab <= cd and c'd <= a'b.
inline bool gn_leq(const ConditionalEvent& p, const ConditionalEvent& q) {
    return leq(p.numerator(), q.numerator()) && leq(q.refutation(), p.refutation());
}

inline bool comparable(const ConditionalEvent& p, const ConditionalEvent& q) { return gn_leq(p, q) || gn_leq(q, p); }

/// Every normalized conditional over `vocab`: 3^(2^k) values, one per
/// assignment of each atom to {numerator, refutation, outside}.
inline std::vector<ConditionalEvent> all_conditionals(const Vocabulary& vocab) {
    const std::size_t atoms = vocab.atom_count();
    if (atoms > 8) throw std::invalid_argument("all_conditionals: vocabulary too large to enumerate");
    std::size_t total = 1;
    for (std::size_t i = 0; i < atoms; ++i) total *= 3;
    std::vector<ConditionalEvent> out;
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        Event num(vocab), ante(vocab);
        std::size_t c = code;
        for (std::size_t a = 0; a < atoms; ++a, c /= 3) {
            if (c % 3 == 1) {
                num.set(a);
                ante.set(a);
            } else if (c % 3 == 2) {
                ante.set(a);
            }
        }
        out.emplace_back(num, ante);
    }
    return out;
}

namespace detail {

/// Positions of `|` at parenthesis depth zero.
inline std::vector<std::size_t> top_level_bars(std::string_view text) {
    std::vector<std::size_t> bars;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')') --depth;
        else if (text[i] == '|' && depth == 0) bars.push_back(i);
    }
    return bars;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace detail

class ConditionalSyntaxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Splits `consequent | antecedent` on its unique top-level bar. Without a bar
/// the antecedent is absent (read as 1).
inline std::pair<std::string_view, std::optional<std::string_view>> split_conditional(std::string_view body) {
    auto bars = detail::top_level_bars(body);
    if (bars.size() > 1)
        throw ConditionalSyntaxError(
            "more than one top-level '|' in conditional; parenthesize a disjunction, e.g. P((a | b) | c)");
    if (bars.empty()) return {detail::trim(body), std::nullopt};
    return {detail::trim(body.substr(0, bars[0])), detail::trim(body.substr(bars[0] + 1))};
}

/// Parses the text form `(f1 | f2)`.
inline ConditionalEvent parse_conditional(std::string_view text, const Vocabulary& vocab) {
    auto t = detail::trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw ConditionalSyntaxError("conditional must have the form (f1 | f2)");
    auto [cons, ante] = split_conditional(t.substr(1, t.size() - 2));
    if (!ante) throw ConditionalSyntaxError("conditional must have the form (f1 | f2)");
    return make_conditional(parse_event(cons, vocab), parse_event(*ante, vocab));
}

/// Normalized `(numerator | antecedent)` with each side in DNF. A side with
/// several disjuncts is parenthesized so the output parses back.
inline std::string to_string(const ConditionalEvent& ce) {
    auto side = [](const Event& e) {
        std::string d = to_dnf(e);
        return d.find('|') == std::string::npos ? d : "(" + d + ")";
    };
    return "(" + side(ce.numerator()) + " | " + side(ce.antecedent()) + ")";
}

}  // namespace condent
