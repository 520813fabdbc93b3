#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace condent {

inline constexpr int kMaxVariables = 20;

class VocabularyMismatch : public std::invalid_argument {
public:
    VocabularyMismatch() : std::invalid_argument("events belong to different vocabularies") {}
};

/// Raised by the formula parser. `offset` is a 0-based character index into the input.
class FormulaSyntaxError : public std::runtime_error {
public:
    FormulaSyntaxError(std::size_t offset, const std::string& what)
        : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownVariable : public std::runtime_error {
public:
    explicit UnknownVariable(const std::string& name)
        : std::runtime_error("unknown variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

/// Ordered set of propositional variables. Atom j assigns variable i the value
/// of bit i of j. Copies share storage, so identity checks are cheap.
class Vocabulary {
public:
    explicit Vocabulary(std::vector<std::string> names) {
        if (names.empty()) throw std::invalid_argument("vocabulary needs at least one variable");
        if (names.size() > static_cast<std::size_t>(kMaxVariables))
            throw std::invalid_argument("vocabulary has " + std::to_string(names.size()) +
                                        " variables; at most " + std::to_string(kMaxVariables) + " are supported");
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!is_identifier(names[i])) throw std::invalid_argument("invalid variable name '" + names[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names[j] == names[i]) throw std::invalid_argument("duplicate variable '" + names[i] + "'");
        }
        names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
    }

    std::size_t size() const noexcept { return names_->size(); }
    std::size_t atom_count() const noexcept { return std::size_t{1} << names_->size(); }
    const std::vector<std::string>& names() const noexcept { return *names_; }
    const std::string& name(std::size_t i) const { return names_->at(i); }

    int index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_->size(); ++i)
            if ((*names_)[i] == name) return static_cast<int>(i);
        return -1;
    }

    friend bool operator==(const Vocabulary& x, const Vocabulary& y) {
        return x.names_ == y.names_ || *x.names_ == *y.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// A subset of the atoms of a vocabulary, i.e. an element of the Boolean ring
/// of events. Bit j is set iff atom j belongs to the event.
class Event {
public:
    using Word = std::uint64_t;

    explicit Event(Vocabulary vocab, bool full = false)
        : vocab_(std::move(vocab)), words_((vocab_.atom_count() + 63) / 64, full ? ~Word{0} : Word{0}) {
        trim();
    }

    static Event zero(const Vocabulary& v) { return Event(v, false); }
    static Event one(const Vocabulary& v) { return Event(v, true); }

    static Event from_atoms(const Vocabulary& v, const std::vector<std::size_t>& atoms) {
        Event e(v);
        for (auto a : atoms) e.set(a);
        return e;
    }

    /// Parses the debug form: binary string of length 2^k, atom 0 rightmost.
    static Event from_bits(const Vocabulary& v, std::string_view bits) {
        if (bits.size() != v.atom_count())
            throw std::invalid_argument("bit string length " + std::to_string(bits.size()) + " != atom count " +
                                        std::to_string(v.atom_count()));
        Event e(v);
        for (std::size_t i = 0; i < bits.size(); ++i) {
            char c = bits[bits.size() - 1 - i];
            if (c == '1') e.set(i);
            else if (c != '0') throw std::invalid_argument("bit string may contain only 0 and 1");
        }
        return e;
    }

    const Vocabulary& vocabulary() const noexcept { return vocab_; }
    std::size_t atom_count() const noexcept { return vocab_.atom_count(); }

    bool test(std::size_t atom) const { return (words_.at(atom / 64) >> (atom % 64)) & 1u; }
    void set(std::size_t atom, bool value = true) {
        if (atom >= atom_count()) throw std::out_of_range("atom index out of range");
        Word mask = Word{1} << (atom % 64);
        if (value) words_[atom / 64] |= mask;
        else words_[atom / 64] &= ~mask;
    }

    bool is_zero() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
    }
    std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    std::vector<std::size_t> atoms() const {
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < atom_count(); ++a)
            if (test(a)) out.push_back(a);
        return out;
    }

    const std::vector<Word>& words() const noexcept { return words_; }

    /// Binary string with atom 0 rightmost.
    std::string to_bits() const {
        std::string s(atom_count(), '0');
        for (std::size_t a = 0; a < atom_count(); ++a)
            if (test(a)) s[atom_count() - 1 - a] = '1';
        return s;
    }

    friend bool operator==(const Event& x, const Event& y) {
        return x.vocab_ == y.vocab_ && x.words_ == y.words_;
    }

    friend Event operator&(const Event& x, const Event& y) { return combine(x, y, [](Word p, Word q) { return p & q; }); }
    friend Event operator|(const Event& x, const Event& y) { return combine(x, y, [](Word p, Word q) { return p | q; }); }
    friend Event operator^(const Event& x, const Event& y) { return combine(x, y, [](Word p, Word q) { return p ^ q; }); }
    Event operator~() const {
        Event r = *this;
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    static void require_same(const Event& x, const Event& y) {
        if (!(x.vocab_ == y.vocab_)) throw VocabularyMismatch();
    }

private:
    template <class Op>
    static Event combine(const Event& x, const Event& y, Op op) {
        require_same(x, y);
        Event r = x;
        for (std::size_t i = 0; i < r.words_.size(); ++i) r.words_[i] = op(x.words_[i], y.words_[i]);
        r.trim();
        return r;
    }

    void trim() {
        std::size_t used = atom_count() % 64;
        if (used != 0) words_.back() &= (Word{1} << used) - 1;
    }

    Vocabulary vocab_;
    std::vector<Word> words_;
};

enum class RingOp { And, Or, Xor };

inline Event ring_op(RingOp op, const Event& x, const Event& y) {
    switch (op) {
        case RingOp::And: return x & y;
        case RingOp::Or: return x | y;
        case RingOp::Xor: return x ^ y;
    }
    throw std::logic_error("bad ring op");
}

inline Event complement(const Event& x) { return ~x; }

/// x minus y.
inline Event difference(const Event& x, const Event& y) { return x & ~y; }

/// Ring order: x <= y iff xy = x.
inline bool leq(const Event& x, const Event& y) {
    Event::require_same(x, y);
    const auto& xw = x.words();
    const auto& yw = y.words();
    for (std::size_t i = 0; i < xw.size(); ++i)
        if ((xw[i] & ~yw[i]) != 0) return false;
    return true;
}

/// Nonempty cells of the partition generated by `events`, ordered by their
/// smallest atom. An empty input yields the single cell 1.
inline std::vector<Event> canonical_partition(const Vocabulary& vocab, const std::vector<Event>& events) {
    for (const auto& e : events)
        if (!(e.vocabulary() == vocab)) throw VocabularyMismatch();

    std::vector<Event> cells;
    std::unordered_map<std::string, std::size_t> by_signature;
    std::string signature(events.size(), '0');
    for (std::size_t atom = 0; atom < vocab.atom_count(); ++atom) {
        for (std::size_t i = 0; i < events.size(); ++i) signature[i] = events[i].test(atom) ? '1' : '0';
        auto [it, inserted] = by_signature.try_emplace(signature, cells.size());
        if (inserted) cells.emplace_back(vocab);
        cells[it->second].set(atom);
    }
    return cells;
}

inline std::vector<Event> canonical_partition(const std::vector<Event>& events) {
    if (events.empty()) throw std::invalid_argument("canonical_partition: vocabulary required for an empty event list");
    return canonical_partition(events.front().vocabulary(), events);
}

// ---------------------------------------------------------------------------
// Formula AST

class Formula {
public:
    enum class Kind { Constant, Variable, Not, And, Or, Xor, Implies };

    static Formula constant(bool v) { return Formula(Kind::Constant, v, {}, nullptr, nullptr); }
    static Formula variable(std::string name) { return Formula(Kind::Variable, false, std::move(name), nullptr, nullptr); }
    static Formula negation(Formula child) {
        return Formula(Kind::Not, false, {}, std::make_shared<const Formula>(std::move(child)), nullptr);
    }
    static Formula binary(Kind k, Formula l, Formula r) {
        if (k == Kind::Constant || k == Kind::Variable || k == Kind::Not)
            throw std::invalid_argument("not a binary connective");
        return Formula(k, false, {}, std::make_shared<const Formula>(std::move(l)),
                       std::make_shared<const Formula>(std::move(r)));
    }

    Kind kind() const noexcept { return kind_; }
    bool value() const noexcept { return value_; }
    const std::string& name() const noexcept { return name_; }
    const Formula& child() const { return *lhs_; }
    const Formula& lhs() const { return *lhs_; }
    const Formula& rhs() const { return *rhs_; }

    friend bool operator==(const Formula& x, const Formula& y) {
        if (x.kind_ != y.kind_) return false;
        switch (x.kind_) {
            case Kind::Constant: return x.value_ == y.value_;
            case Kind::Variable: return x.name_ == y.name_;
            case Kind::Not: return *x.lhs_ == *y.lhs_;
            default: return *x.lhs_ == *y.lhs_ && *x.rhs_ == *y.rhs_;
        }
    }

private:
    Formula(Kind k, bool v, std::string n, std::shared_ptr<const Formula> l, std::shared_ptr<const Formula> r)
        : kind_(k), value_(v), name_(std::move(n)), lhs_(std::move(l)), rhs_(std::move(r)) {}

    Kind kind_;
    bool value_;
    std::string name_;
    std::shared_ptr<const Formula> lhs_;
    std::shared_ptr<const Formula> rhs_;
};

namespace detail {

class FormulaParser {
public:
    FormulaParser(std::string_view text, const Vocabulary& vocab) : text_(text), vocab_(vocab) {}

    Formula parse() {
        skip_space();
        if (pos_ == text_.size()) throw FormulaSyntaxError(pos_, "empty formula");
        Formula f = parse_implies();
        skip_space();
        if (pos_ != text_.size()) throw FormulaSyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return f;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(std::string_view tok) {
        skip_space();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    bool peek_arrow() {
        skip_space();
        return text_.substr(pos_, 2) == "->";
    }

    Formula parse_implies() {
        Formula l = parse_or();
        if (accept("->")) return Formula::binary(Formula::Kind::Implies, std::move(l), parse_implies());
        return l;
    }
    Formula parse_or() {
        Formula l = parse_xor();
        while (accept("|")) l = Formula::binary(Formula::Kind::Or, std::move(l), parse_xor());
        return l;
    }
    Formula parse_xor() {
        Formula l = parse_and();
        while (accept("^")) l = Formula::binary(Formula::Kind::Xor, std::move(l), parse_and());
        return l;
    }
    Formula parse_and() {
        Formula l = parse_unary();
        while (accept("&")) l = Formula::binary(Formula::Kind::And, std::move(l), parse_unary());
        return l;
    }
    Formula parse_unary() {
        if (accept("~")) return Formula::negation(parse_unary());
        return parse_primary();
    }
    Formula parse_primary() {
        skip_space();
        if (pos_ == text_.size()) throw FormulaSyntaxError(pos_, "unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Formula f = parse_implies();
            skip_space();
            if (pos_ == text_.size() || text_[pos_] != ')') throw FormulaSyntaxError(pos_, "expected ')'");
            ++pos_;
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (vocab_.index_of(name) < 0) throw UnknownVariable(name);
            return Formula::variable(std::move(name));
        }
        if (c == '0' || c == '1') {
            std::size_t start = pos_++;
            if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                throw FormulaSyntaxError(start, "malformed constant");
            return Formula::constant(c == '1');
        }
        throw FormulaSyntaxError(pos_, std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    const Vocabulary& vocab_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar, loosest to tightest: `->` (right-assoc), `|`, `^`, `&`, prefix `~`.
inline Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
    return detail::FormulaParser(text, vocab).parse();
}

/// Fully parenthesized form; parses back to an identical tree.
inline std::string to_string(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Constant: return f.value() ? "1" : "0";
        case K::Variable: return f.name();
        case K::Not: return "~" + to_string(f.child());
        case K::And: return "(" + to_string(f.lhs()) + " & " + to_string(f.rhs()) + ")";
        case K::Or: return "(" + to_string(f.lhs()) + " | " + to_string(f.rhs()) + ")";
        case K::Xor: return "(" + to_string(f.lhs()) + " ^ " + to_string(f.rhs()) + ")";
        case K::Implies: return "(" + to_string(f.lhs()) + " -> " + to_string(f.rhs()) + ")";
    }
    throw std::logic_error("bad formula kind");
}

/// Event of variable i: the atoms whose bit i is set.
inline Event variable_event(const Vocabulary& vocab, std::size_t i) {
    Event e(vocab);
    for (std::size_t atom = 0; atom < vocab.atom_count(); ++atom)
        if ((atom >> i) & 1u) e.set(atom);
    return e;
}

inline Event evaluate(const Formula& f, const Vocabulary& vocab) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Constant: return Event(vocab, f.value());
        case K::Variable: {
            int i = vocab.index_of(f.name());
            if (i < 0) throw UnknownVariable(f.name());
            return variable_event(vocab, static_cast<std::size_t>(i));
        }
        case K::Not: return ~evaluate(f.child(), vocab);
        case K::And: return evaluate(f.lhs(), vocab) & evaluate(f.rhs(), vocab);
        case K::Or: return evaluate(f.lhs(), vocab) | evaluate(f.rhs(), vocab);
        case K::Xor: return evaluate(f.lhs(), vocab) ^ evaluate(f.rhs(), vocab);
        case K::Implies: return ~evaluate(f.lhs(), vocab) | evaluate(f.rhs(), vocab);
    }
    throw std::logic_error("bad formula kind");
}

inline Event parse_event(std::string_view text, const Vocabulary& vocab) {
    return evaluate(parse_formula(text, vocab), vocab);
}

/// Disjunctive normal form over atoms, e.g. `a & ~b | ~a & b`; `0` and `1` for the constants.
inline std::string to_dnf(const Event& e) {
    if (e.is_zero()) return "0";
    if (e.count() == e.atom_count()) return "1";
    const auto& vocab = e.vocabulary();
    std::string out;
    for (auto atom : e.atoms()) {
        if (!out.empty()) out += " | ";
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            if (i) out += " & ";
            if (!((atom >> i) & 1u)) out += "~";
            out += vocab.name(i);
        }
    }
    return out;
}

}  // namespace condent
