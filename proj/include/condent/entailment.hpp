#pragma once

#include "condent/conditional.hpp"
#include "condent/lp.hpp"
#include "condent/numeric.hpp"
#include "condent/probability.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace condent {

/// One assessment P(a_i | b_i) = alpha_i.
struct ConditionalAssessment {
    ConditionalEvent cond;
    Rational alpha;
};

/// A theory <K, E>: assessments plus the conjunction of asserted evidence.
class KnowledgeBase {
public:
    explicit KnowledgeBase(Vocabulary vocab) : vocab_(std::move(vocab)), evidence_(Event::one(vocab_)) {}

    void add(const ConditionalEvent& cond, Rational alpha) {
        if (!(cond.vocabulary() == vocab_)) throw VocabularyMismatch();
        if (alpha < 0 || alpha > 1) throw std::invalid_argument("probability " + ScalarTraits<Rational>::to_string(alpha) + " outside [0,1]");
        if (cond.antecedent().is_zero()) throw std::invalid_argument("assessment conditions on the impossible event");
        assessments_.push_back({cond, std::move(alpha)});
    }

    void add_evidence(const Event& e) {
        if (!(e.vocabulary() == vocab_)) throw VocabularyMismatch();
        evidence_ = evidence_ & e;
    }

    const Vocabulary& vocabulary() const noexcept { return vocab_; }
    const std::vector<ConditionalAssessment>& assessments() const noexcept { return assessments_; }
    const Event& evidence() const noexcept { return evidence_; }
    std::size_t size() const noexcept { return assessments_.size(); }

private:
    Vocabulary vocab_;
    std::vector<ConditionalAssessment> assessments_;
    Event evidence_;
};

/// Entry of the coding matrix: cell inside a_i b_i, inside a_i' b_i, or inside b_i'.
enum class CellTag : std::uint8_t { Zero, One, AlphaSlot };

/// Canonical partition cells plus the coding matrix Pi. When built for a
/// query, `query_numerator`/`query_antecedent` mark the cells of a* and b*.
struct ConstraintSystem {
    std::vector<Event> cells;
    std::vector<std::vector<CellTag>> pi;
    std::vector<Rational> alphas;
    std::vector<bool> query_numerator;
    std::vector<bool> query_antecedent;

    std::size_t rows() const noexcept { return pi.size(); }
    std::size_t cols() const noexcept { return cells.size(); }

    /// Pi_ij with the row's own alpha substituted for the slot.
    template <class T>
    T coefficient(std::size_t i, std::size_t j) const {
        switch (pi[i][j]) {
            case CellTag::Zero: return T(0);
            case CellTag::One: return T(1);
            case CellTag::AlphaSlot: return ScalarTraits<T>::from_rational(alphas[i]);
        }
        return T(0);
    }
};

class DegenerateQuery : public std::invalid_argument {
public:
    DegenerateQuery() : std::invalid_argument("query antecedent (with evidence) is the impossible event") {}
};

namespace detail {

inline CellTag tag_of(const Event& cell, const ConditionalEvent& ce) {
    if (leq(cell, ce.numerator())) return CellTag::One;
    if (leq(cell, ce.refutation())) return CellTag::Zero;
    if (leq(cell, ~ce.antecedent())) return CellTag::AlphaSlot;
    throw std::logic_error("cell straddles a generating event");
}

inline std::vector<bool> membership(const std::vector<Event>& cells, const Event& e) {
    std::vector<bool> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(leq(c, e));
    return out;
}

inline ConstraintSystem assemble(const KnowledgeBase& kb, std::vector<Event> generators,
                                 const std::optional<std::pair<Event, Event>>& query) {
    for (const auto& a : kb.assessments()) {
        generators.push_back(a.cond.numerator());
        generators.push_back(a.cond.antecedent());
    }
    ConstraintSystem sys;
    sys.cells = canonical_partition(kb.vocabulary(), generators);
    for (const auto& a : kb.assessments()) {
        std::vector<CellTag> row;
        row.reserve(sys.cells.size());
        for (const auto& c : sys.cells) row.push_back(tag_of(c, a.cond));
        sys.pi.push_back(std::move(row));
        sys.alphas.push_back(a.alpha);
    }
    if (query) {
        sys.query_numerator = membership(sys.cells, query->first);
        sys.query_antecedent = membership(sys.cells, query->second);
    }
    return sys;
}

}  // namespace detail

/// Query-effective events: b* = b & E and a* = ab & E.
inline std::pair<Event, Event> effective_query(const KnowledgeBase& kb, const ConditionalEvent& query) {
    if (!(query.vocabulary() == kb.vocabulary())) throw VocabularyMismatch();
    Event ante = query.antecedent() & kb.evidence();
    return {query.numerator() & ante, ante};
}

inline ConstraintSystem build_system(const KnowledgeBase& kb, const ConditionalEvent& query) {
    auto [num, ante] = effective_query(kb, query);
    if (ante.is_zero()) throw DegenerateQuery();
    return detail::assemble(kb, {num, ante}, std::make_pair(num, ante));
}

/// System over the knowledge base alone.
inline ConstraintSystem build_system(const KnowledgeBase& kb) { return detail::assemble(kb, {}, std::nullopt); }

template <class T>
struct RowResiduals {
    T coding_form;   // |sum_j Lambda_j Pi_ij - alpha_i|
    T product_form;  // |P(a_i b_i) - alpha_i P(b_i)|
};

template <class T>
RowResiduals<T> row_residuals(const ConstraintSystem& sys, const std::vector<T>& masses, std::size_t i) {
    if (i >= sys.rows()) throw std::out_of_range("row index " + std::to_string(i) + " out of range");
    if (masses.size() != sys.cols()) throw std::invalid_argument("mass vector does not match cell count");
    const T alpha = ScalarTraits<T>::from_rational(sys.alphas[i]);
    T coded(0), pab(0), pb(0);
    for (std::size_t j = 0; j < sys.cols(); ++j) {
        coded += masses[j] * sys.coefficient<T>(i, j);
        if (sys.pi[i][j] == CellTag::One) pab += masses[j];
        if (sys.pi[i][j] != CellTag::AlphaSlot) pb += masses[j];
    }
    return {abs_value(T(coded - alpha)), abs_value(T(pab - alpha * pb))};
}

/// Residual of row i; the coding-matrix and product forms must agree.
template <class T>
T row_residual(const ConstraintSystem& sys, const std::vector<T>& masses, std::size_t i) {
    auto r = row_residuals(sys, masses, i);
    T tol = ScalarTraits<T>::exact ? T(0) : ScalarTraits<T>::from_double(1e-9);
    if (abs_value(T(r.coding_form - r.product_form)) > tol)
        throw std::logic_error("row residual forms disagree; masses are not a probability vector");
    return r.coding_form;
}

namespace detail {

/// P(a_i b_i) - alpha_i P(b_i) = 0 for each row.
template <class T>
void add_homogeneous_rows(LinearProgram<T>& lp, const ConstraintSystem& sys) {
    for (std::size_t i = 0; i < sys.rows(); ++i) {
        const T alpha = ScalarTraits<T>::from_rational(sys.alphas[i]);
        std::vector<T> row(sys.cols(), T(0));
        for (std::size_t j = 0; j < sys.cols(); ++j) {
            switch (sys.pi[i][j]) {
                case CellTag::One: row[j] = T(T(1) - alpha); break;
                case CellTag::Zero: row[j] = T(-alpha); break;
                case CellTag::AlphaSlot: break;
            }
        }
        lp.add(std::move(row), Relation::Equal, T(0));
    }
}

template <class T>
std::vector<T> indicator(const std::vector<bool>& mask) {
    std::vector<T> v(mask.size(), T(0));
    for (std::size_t j = 0; j < mask.size(); ++j)
        if (mask[j]) v[j] = T(1);
    return v;
}

/// Probability-vector polytope of the system: Lambda >= 0, sum = 1, rows hold.
template <class T>
LinearProgram<T> model_polytope(const ConstraintSystem& sys, Sense sense) {
    LinearProgram<T> lp(sys.cols(), sense);
    lp.add(std::vector<T>(sys.cols(), T(1)), Relation::Equal, T(1));
    add_homogeneous_rows(lp, sys);
    return lp;
}

}  // namespace detail

template <class T>
struct FeasibilityReport {
    bool feasible = false;
    /// Phase-1 optimum (zero iff feasible).
    T infeasibility{0};
    /// Rows whose removal alone restores feasibility.
    std::vector<std::size_t> culprit_rows;
};

template <class T = double>
FeasibilityReport<T> check_feasibility(const KnowledgeBase& kb) {
    auto sys = build_system(kb);
    auto outcome = solve(detail::model_polytope<T>(sys, Sense::Minimize));
    FeasibilityReport<T> rep;
    rep.feasible = outcome.status != LPStatus::Infeasible;
    rep.infeasibility = outcome.infeasibility;
    if (!rep.feasible) {
        for (std::size_t skip = 0; skip < sys.rows(); ++skip) {
            ConstraintSystem reduced = sys;
            reduced.pi.erase(reduced.pi.begin() + static_cast<std::ptrdiff_t>(skip));
            reduced.alphas.erase(reduced.alphas.begin() + static_cast<std::ptrdiff_t>(skip));
            if (solve(detail::model_polytope<T>(reduced, Sense::Minimize)).status != LPStatus::Infeasible)
                rep.culprit_rows.push_back(skip);
        }
    }
    return rep;
}

template <class T = double>
bool feasible(const KnowledgeBase& kb) {
    return check_feasibility<T>(kb).feasible;
}

template <class T>
struct BoundsReport {
    bool feasible = false;
    bool conditionable = false;
    std::optional<T> lower;
    std::optional<T> upper;
    std::optional<ProbabilityModel<T>> witness_low;
    std::optional<ProbabilityModel<T>> witness_high;
    /// Largest P(b*) over feasible models.
    T max_antecedent{0};
};

/// Tight bounds on P(a* | b*) over models of the knowledge base with P(b*) > 0.
///
/// The ratio P(a*)/P(b*) is linearized with y = Lambda / P(b*): the rows stay
/// homogeneous, sum over b* of y is 1, and sum of y >= 1 encodes P(b*) <= 1.
/// Every such y maps back to a model via Lambda = y / sum(y), so the optima
/// are attained and the witnesses are genuine models.
template <class T = double>
BoundsReport<T> bounds(const KnowledgeBase& kb, const ConditionalEvent& query) {
    BoundsReport<T> rep;
    auto [num, ante] = effective_query(kb, query);
    if (ante.is_zero()) {
        rep.feasible = check_feasibility<T>(kb).feasible;
        return rep;
    }
    const auto sys = build_system(kb, query);
    const auto b_ind = detail::indicator<T>(sys.query_antecedent);
    const auto a_ind = detail::indicator<T>(sys.query_numerator);

    auto reach = detail::model_polytope<T>(sys, Sense::Maximize);
    reach.objective = b_ind;
    auto reach_out = solve(reach);
    if (reach_out.status == LPStatus::Infeasible) return rep;
    rep.feasible = true;
    rep.max_antecedent = reach_out.value;
    const T threshold = ScalarTraits<T>::exact ? T(0) : ScalarTraits<T>::from_double(1e-9);
    rep.conditionable = reach_out.value > threshold;
    if (!rep.conditionable) return rep;

    auto extreme = [&](Sense sense) {
        LinearProgram<T> lp(sys.cols(), sense);
        lp.objective = a_ind;
        detail::add_homogeneous_rows(lp, sys);
        lp.add(b_ind, Relation::Equal, T(1));
        lp.add(std::vector<T>(sys.cols(), T(1)), Relation::GreaterEqual, T(1));
        auto out = solve(lp);
        if (out.status != LPStatus::Optimal)
            throw std::runtime_error(std::string("scaled bound program ended ") + to_string(out.status));
        T total(0);
        for (const auto& y : out.point) total += y;
        std::vector<T> masses;
        masses.reserve(out.point.size());
        for (const auto& y : out.point) masses.push_back(T(y / total));
        T value = out.value;
        if constexpr (!ScalarTraits<T>::exact) value = std::min(1.0, std::max(0.0, value));
        return std::make_pair(value, ProbabilityModel<T>(sys.cells, std::move(masses)));
    };
    // The two programs are independent; run order does not affect results.
    auto [lo, wlo] = extreme(Sense::Minimize);
    auto [hi, whi] = extreme(Sense::Maximize);
    rep.lower = lo;
    rep.upper = hi;
    rep.witness_low = std::move(wlo);
    rep.witness_high = std::move(whi);
    return rep;
}

/// Bounds before and after conjoining `extra` to the query antecedent.
template <class T = double>
std::pair<BoundsReport<T>, BoundsReport<T>> compare(const KnowledgeBase& kb, const ConditionalEvent& base,
                                                    const Event& extra) {
    ConditionalEvent revised = make_conditional(base.numerator(), base.antecedent() & extra);
    return {bounds<T>(kb, base), bounds<T>(kb, revised)};
}

enum class Revision { Widened, Narrowed, Shifted, Unchanged, Undefined };

inline const char* to_string(Revision r) {
    switch (r) {
        case Revision::Widened: return "WIDENED";
        case Revision::Narrowed: return "NARROWED";
        case Revision::Shifted: return "SHIFTED";
        case Revision::Unchanged: return "UNCHANGED";
        case Revision::Undefined: return "UNDEFINED";
    }
    return "?";
}

/// How the interval moved from `before` to `after`.
template <class T>
Revision classify_revision(const BoundsReport<T>& before, const BoundsReport<T>& after) {
    if (!before.lower || !after.lower) return Revision::Undefined;
    const T tol = ScalarTraits<T>::exact ? T(0) : ScalarTraits<T>::from_double(1e-9);
    auto same = [&](const T& x, const T& y) { return abs_value(T(x - y)) <= tol; };
    const T &l0 = *before.lower, &u0 = *before.upper, &l1 = *after.lower, &u1 = *after.upper;
    if (same(l0, l1) && same(u0, u1)) return Revision::Unchanged;
    if (l1 <= l0 + tol && u1 + tol >= u0) return Revision::Widened;
    if (l1 + tol >= l0 && u1 <= u0 + tol) return Revision::Narrowed;
    return Revision::Shifted;
}

}  // namespace condent
