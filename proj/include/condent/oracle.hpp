#pragma once

#include "condent/conditional.hpp"
#include "condent/entailment.hpp"
#include "condent/numeric.hpp"
#include "condent/probability.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace condent::oracle {

/// Masses are multiples of 1/resolution; rows may miss their target by at most `tolerance`.
struct GridSpec {
    std::uint32_t resolution = 20;
    Rational tolerance{0};
};

struct GridResult {
    Rational lower;
    Rational upper;
    std::uint64_t samples = 0;
};

class GuardRailExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kMaxCompositions = 1e7;

/// C(N + m - 1, m - 1): compositions of N into m nonnegative parts.
inline double composition_count(std::uint32_t n, std::size_t parts) {
    if (parts == 0) return 0;
    double c = 1;
    for (std::size_t i = 1; i < parts; ++i) c = c * static_cast<double>(n + i) / static_cast<double>(i);
    return c;
}

namespace detail {

inline std::int64_t to_i64(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() / 4 || v < std::numeric_limits<std::int64_t>::min() / 4)
        throw std::invalid_argument(std::string("grid oracle: ") + what + " too large for integer arithmetic");
    return v.convert_to<std::int64_t>();
}

/// Calls visit(parts) for every composition of n into parts.size() nonnegative parts.
template <class Visit>
void for_each_composition(std::uint32_t n, std::vector<std::uint32_t>& parts, Visit&& visit) {
    const std::size_t m = parts.size();
    if (m == 0) return;
    std::fill(parts.begin(), parts.end(), 0u);
    parts[m - 1] = n;
    for (;;) {
        visit(static_cast<const std::vector<std::uint32_t>&>(parts));
        // Next composition: move one unit from the last part leftwards.
        std::size_t i = m - 1;
        while (i > 0 && parts[i] == 0) --i;
        if (i == 0) return;
        std::uint32_t tail = parts[i];
        parts[i] = 0;
        ++parts[i - 1];
        parts[m - 1] = tail - 1;
    }
}

}  // namespace detail

/// Enumerates every grid model on the query's cells and returns the extreme
/// feasible values of P(a*)/P(b*), or nullopt when no grid point is feasible.
/// Row checks are done directly on events, not through the coding matrix.
inline std::optional<GridResult> grid_bounds(const KnowledgeBase& kb, const ConditionalEvent& query,
                                             const GridSpec& spec) {
    if (spec.resolution == 0) throw std::invalid_argument("grid resolution must be positive");
    if (spec.tolerance < 0) throw std::invalid_argument("grid tolerance must be nonnegative");
    auto [qnum, qante] = effective_query(kb, query);

    std::vector<Event> generators{qnum, qante};
    for (const auto& a : kb.assessments()) {
        generators.push_back(a.cond.numerator());
        generators.push_back(a.cond.antecedent());
    }
    const auto cells = canonical_partition(kb.vocabulary(), generators);
    const std::size_t m = cells.size();
    if (composition_count(spec.resolution, m) > kMaxCompositions)
        throw GuardRailExceeded("grid oracle: " + std::to_string(m) + " cells at resolution " +
                                std::to_string(spec.resolution) + " exceeds the enumeration limit");

    struct Row {
        std::vector<bool> in_ab, in_b;
        std::int64_t p, q;
    };
    std::vector<Row> rows;
    for (const auto& a : kb.assessments()) {
        Row r;
        for (const auto& c : cells) {
            r.in_ab.push_back(leq(c, a.cond.numerator()));
            r.in_b.push_back(leq(c, a.cond.antecedent()));
        }
        r.p = detail::to_i64(numerator(a.alpha), "alpha numerator");
        r.q = detail::to_i64(denominator(a.alpha), "alpha denominator");
        rows.push_back(std::move(r));
    }
    std::vector<bool> in_qa, in_qb;
    for (const auto& c : cells) {
        in_qa.push_back(leq(c, qnum));
        in_qb.push_back(leq(c, qante));
    }
    const std::int64_t tol_num = detail::to_i64(numerator(spec.tolerance), "tolerance numerator");
    const std::int64_t tol_den = detail::to_i64(denominator(spec.tolerance), "tolerance denominator");
    const __int128 n = spec.resolution;

    bool found = false;
    std::int64_t lo_n = 0, lo_d = 1, hi_n = 0, hi_d = 1;
    std::uint64_t samples = 0;
    std::vector<std::uint32_t> parts(m);
    detail::for_each_composition(spec.resolution, parts, [&](const std::vector<std::uint32_t>& w) {
        std::int64_t cb = 0, ca = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (in_qb[j]) cb += w[j];
            if (in_qa[j]) ca += w[j];
        }
        if (cb == 0) return;
        for (const auto& r : rows) {
            std::int64_t cab = 0, cbi = 0;
            for (std::size_t j = 0; j < m; ++j) {
                if (r.in_ab[j]) cab += w[j];
                if (r.in_b[j]) cbi += w[j];
            }
            // |c_ab/N - (p/q) c_b/N| <= tol  <=>  |q c_ab - p c_b| tol_den <= tol_num q N
            __int128 diff = static_cast<__int128>(r.q) * cab - static_cast<__int128>(r.p) * cbi;
            if (diff < 0) diff = -diff;
            if (diff * tol_den > static_cast<__int128>(tol_num) * r.q * n) return;
        }
        ++samples;
        if (!found) {
            lo_n = hi_n = ca;
            lo_d = hi_d = cb;
            found = true;
            return;
        }
        if (static_cast<__int128>(ca) * lo_d < static_cast<__int128>(lo_n) * cb) lo_n = ca, lo_d = cb;
        if (static_cast<__int128>(ca) * hi_d > static_cast<__int128>(hi_n) * cb) hi_n = ca, hi_d = cb;
    });
    if (!found) return std::nullopt;
    return GridResult{Rational(lo_n, lo_d), Rational(hi_n, hi_d), samples};
}

struct SampledResult {
    double lower;
    double upper;
    std::uint64_t samples = 0;
};

/// Fallback when the grid is too large: random models drawn uniformly from the
/// simplex over the query's cells, kept when every row residual is <= tolerance.
inline std::optional<SampledResult> sampled_bounds(const KnowledgeBase& kb, const ConditionalEvent& query,
                                                   std::uint64_t draws, std::uint64_t seed, double tolerance) {
    auto [qnum, qante] = effective_query(kb, query);
    if (qante.is_zero()) return std::nullopt;
    const auto sys = build_system(kb, query);
    std::optional<SampledResult> out;
    for (std::uint64_t s = 0; s < draws; ++s) {
        auto model = random_model<double>(sys.cells, seed + s);
        bool ok = true;
        for (std::size_t i = 0; i < sys.rows() && ok; ++i)
            ok = row_residuals(sys, model.masses(), i).product_form <= tolerance;
        if (!ok) continue;
        double pb = prob(model, qante);
        if (pb <= 0) continue;
        double ratio = prob(model, qnum) / pb;
        if (!out) out = SampledResult{ratio, ratio, 0};
        out->lower = std::min(out->lower, ratio);
        out->upper = std::max(out->upper, ratio);
        ++out->samples;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive algebra law checks on small rings.

inline const std::vector<std::string>& law_names() {
    static const std::vector<std::string> names{
        "demorgan_and", "demorgan_or",  "order_equiv",     "involution",      "idempotence",
        "commutativity", "embedding_hom", "antisymmetry",  "transitivity",    "monotone_P",
        "associativity_and", "associativity_or", "distributivity"};
    return names;
}

/// Every violating instance of `law` over all normalized conditionals on k variables.
/// `monotone_P` draws `models` seeded random models per comparable pair.
inline std::vector<std::string> exhaustive_law_check(int k, std::string_view law, int models = 200) {
    if (k < 1 || k > 2) throw std::invalid_argument("exhaustive law checks need 1 <= k <= 2");
    bool known = false;
    for (const auto& n : law_names()) known = known || n == law;
    if (!known) throw std::invalid_argument("unknown law '" + std::string(law) + "'");

    std::vector<std::string> names{"a", "b"};
    names.resize(static_cast<std::size_t>(k));
    const Vocabulary vocab(names);
    const auto all = all_conditionals(vocab);
    const std::size_t n = all.size();
    std::vector<std::string> bad;
    auto show = [](const ConditionalEvent& c) {
        return "(" + c.numerator().to_bits() + "|" + c.antecedent().to_bits() + ")";
    };

    std::vector<char> le(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) le[i * n + j] = gn_leq(all[i], all[j]);

    if (law == "involution" || law == "idempotence") {
        for (const auto& p : all) {
            if (law == "involution" && !(ce_not(ce_not(p)) == p)) bad.push_back(show(p));
            if (law == "idempotence" && (!(ce_and(p, p) == p) || !(ce_or(p, p) == p))) bad.push_back(show(p));
        }
        return bad;
    }
    if (law == "embedding_hom") {
        std::vector<Event> events;
        for (std::size_t code = 0; code < (std::size_t{1} << vocab.atom_count()); ++code) {
            Event e(vocab);
            for (std::size_t a = 0; a < vocab.atom_count(); ++a)
                if ((code >> a) & 1u) e.set(a);
            events.push_back(e);
        }
        for (const auto& x : events) {
            auto px = ConditionalEvent::of(x);
            if (!(ce_not(px) == ConditionalEvent::of(~x))) bad.push_back("not " + x.to_bits());
            for (const auto& y : events) {
                auto py = ConditionalEvent::of(y);
                if (!(ce_and(px, py) == ConditionalEvent::of(x & y))) bad.push_back("and " + x.to_bits() + "," + y.to_bits());
                if (!(ce_or(px, py) == ConditionalEvent::of(x | y))) bad.push_back("or " + x.to_bits() + "," + y.to_bits());
                if (gn_leq(px, py) != leq(x, y)) bad.push_back("order " + x.to_bits() + "," + y.to_bits());
            }
        }
        return bad;
    }
    if (law == "transitivity") {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!le[i * n + j]) continue;
                for (std::size_t l = 0; l < n; ++l)
                    if (le[j * n + l] && !le[i * n + l]) bad.push_back(show(all[i]) + show(all[j]) + show(all[l]));
            }
        return bad;
    }
    if (law == "associativity_and" || law == "associativity_or" || law == "distributivity") {
        for (const auto& p : all)
            for (const auto& q : all)
                for (const auto& r : all) {
                    bool ok = true;
                    if (law == "associativity_and") ok = ce_and(ce_and(p, q), r) == ce_and(p, ce_and(q, r));
                    else if (law == "associativity_or") ok = ce_or(ce_or(p, q), r) == ce_or(p, ce_or(q, r));
                    else
                        ok = ce_and(p, ce_or(q, r)) == ce_or(ce_and(p, q), ce_and(p, r)) &&
                             ce_or(p, ce_and(q, r)) == ce_and(ce_or(p, q), ce_or(p, r));
                    if (!ok) bad.push_back(show(p) + show(q) + show(r));
                }
        return bad;
    }
    if (law == "monotone_P") {
        std::vector<ProbabilityModel<double>> sample;
        std::vector<Event> atoms;
        for (std::size_t a = 0; a < vocab.atom_count(); ++a) atoms.push_back(Event::from_atoms(vocab, {a}));
        for (int s = 0; s < models; ++s) sample.push_back(random_model<double>(atoms, static_cast<std::uint64_t>(s) + 1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!le[i * n + j]) continue;
                for (const auto& m : sample) {
                    if (prob(m, all[i].antecedent()) < 1e-6 || prob(m, all[j].antecedent()) < 1e-6) continue;
                    if (cond_prob(m, all[i]) > cond_prob(m, all[j]) + 1e-12) bad.push_back(show(all[i]) + show(all[j]));
                }
            }
        return bad;
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto &p = all[i], &q = all[j];
            bool ok = true;
            if (law == "demorgan_and") ok = ce_not(ce_and(p, q)) == ce_or(ce_not(p), ce_not(q));
            else if (law == "demorgan_or") ok = ce_not(ce_or(p, q)) == ce_and(ce_not(p), ce_not(q));
            else if (law == "order_equiv") ok = static_cast<bool>(le[i * n + j]) == (ce_and(p, q) == p);
            else if (law == "commutativity") ok = ce_and(p, q) == ce_and(q, p) && ce_or(p, q) == ce_or(q, p);
            else if (law == "antisymmetry") ok = !(le[i * n + j] && le[j * n + i]) || p == q;
            if (!ok) bad.push_back(show(p) + show(q));
        }
    return bad;
}

}  // namespace condent::oracle
