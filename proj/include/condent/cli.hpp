#pragma once

#include "condent/entailment.hpp"
#include "condent/kbfile.hpp"
#include "condent/oracle.hpp"

#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

namespace condent::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kNotConditionable = 3 };

struct Options {
    bool json = false;
    bool exact = false;
    std::optional<std::uint32_t> oracle_resolution;
    std::uint64_t seed = 0;
};

namespace detail {

template <class T>
std::string show(const T& v) {
    return ScalarTraits<T>::to_string(v);
}

template <class T>
nlohmann::ordered_json number_or_null(const std::optional<T>& v) {
    if (!v) return nullptr;
    return ScalarTraits<T>::to_double(*v);
}

template <class T>
nlohmann::ordered_json report_json(const BoundsReport<T>& r) {
    nlohmann::ordered_json j;
    j["feasible"] = r.feasible;
    j["conditionable"] = r.conditionable;
    j["lower"] = number_or_null(r.lower);
    j["upper"] = number_or_null(r.upper);
    return j;
}

template <class T>
void print_model(std::ostream& out, const ProbabilityModel<T>& m) {
    for (const auto& [cell, mass] : serialize(m)) {
        if (mass == T(0)) continue;
        out << "    " << std::left << std::setw(12) << show(mass) << "  " << cell << "\n";
    }
}

template <class T>
void print_report(std::ostream& out, const std::string& label, const BoundsReport<T>& r) {
    out << label << "\n";
    out << "  feasible       " << (r.feasible ? "yes" : "no") << "\n";
    if (!r.feasible) return;
    out << "  conditionable  " << (r.conditionable ? "yes" : "no") << "\n";
    if (!r.conditionable) {
        out << "  (every model of the knowledge base gives the conditioning event probability 0)\n";
        return;
    }
    out << "  lower          " << show(*r.lower) << "\n";
    out << "  upper          " << show(*r.upper) << "\n";
    out << "  witness attaining the lower bound:\n";
    print_model(out, *r.witness_low);
    out << "  witness attaining the upper bound:\n";
    print_model(out, *r.witness_high);
}

inline Rational default_tolerance(const Options& opt, std::uint32_t n) {
    return opt.exact ? Rational(0) : Rational(1, 2 * static_cast<long long>(n));
}

/// Runs the grid oracle (sampling instead when the grid is too large); adds to JSON if given.
inline void run_oracle(const KnowledgeBase& kb, const ConditionalEvent& q, const Options& opt, std::ostream& out,
                       nlohmann::ordered_json* json) {
    const std::uint32_t n = *opt.oracle_resolution;
    const Rational eta = default_tolerance(opt, n);
    nlohmann::ordered_json o;
    o["resolution"] = n;
    o["tolerance"] = static_cast<double>(eta);
    try {
        auto g = oracle::grid_bounds(kb, q, oracle::GridSpec{n, eta});
        o["method"] = "grid";
        o["samples"] = g ? g->samples : 0;
        o["lower"] = g ? nlohmann::ordered_json(static_cast<double>(g->lower)) : nlohmann::ordered_json(nullptr);
        o["upper"] = g ? nlohmann::ordered_json(static_cast<double>(g->upper)) : nlohmann::ordered_json(nullptr);
        if (!json) {
            out << "oracle (grid, resolution 1/" << n << ", tolerance " << show(eta) << ")\n";
            if (g)
                out << "  lower          " << show(g->lower) << "\n  upper          " << show(g->upper)
                    << "\n  samples        " << g->samples << "\n";
            else
                out << "  no feasible grid model\n";
        }
    } catch (const oracle::GuardRailExceeded& e) {
        const double tol = static_cast<double>(eta);
        auto s = oracle::sampled_bounds(kb, q, 100000, opt.seed, tol);
        o["method"] = "sampled";
        o["samples"] = s ? s->samples : 0;
        o["lower"] = s ? nlohmann::ordered_json(s->lower) : nlohmann::ordered_json(nullptr);
        o["upper"] = s ? nlohmann::ordered_json(s->upper) : nlohmann::ordered_json(nullptr);
        if (!json) {
            out << "oracle: " << e.what() << "; falling back to random sampling (seed " << opt.seed << ")\n";
            if (s)
                out << "  lower          " << s->lower << "\n  upper          " << s->upper << "\n  samples        "
                    << s->samples << "\n";
            else
                out << "  no sampled model met the tolerance\n";
        }
    }
    if (json) (*json)["oracle"] = o;
}

template <class T>
int exit_code(const BoundsReport<T>& r) {
    if (!r.feasible) return kInfeasible;
    if (!r.conditionable) return kNotConditionable;
    return kOk;
}

template <class T>
int check(const KBFile& file, const Options& opt, std::ostream& out) {
    auto rep = check_feasibility<T>(file.kb);
    if (opt.json) {
        nlohmann::ordered_json j;
        j["feasible"] = rep.feasible;
        j["infeasibility"] = ScalarTraits<T>::to_double(rep.infeasibility);
        auto lines = nlohmann::ordered_json::array();
        for (auto i : rep.culprit_rows) lines.push_back(file.assessment_line[i]);
        j["culprit_lines"] = lines;
        out << j.dump() << "\n";
    } else if (rep.feasible) {
        out << "feasible: " << file.kb.size() << " assessment(s) admit a common probability model\n";
    } else {
        out << "infeasible: no probability model satisfies every assessment\n";
        out << "  phase-1 residual mass  " << show(rep.infeasibility) << "\n";
        if (!rep.culprit_rows.empty()) {
            out << "  dropping any one of these restores feasibility:\n";
            for (auto i : rep.culprit_rows)
                out << "    line " << file.assessment_line[i] << ": " << file.assessment_text[i] << "\n";
        }
    }
    return rep.feasible ? kOk : kInfeasible;
}

template <class T>
int query(const KBFile& file, const std::string& text, const Options& opt, std::ostream& out) {
    const auto& kb = file.kb;
    auto q = parse_query(text, kb.vocabulary());
    auto rep = bounds<T>(kb, q);
    if (opt.json) {
        auto j = report_json(rep);
        if (opt.oracle_resolution) run_oracle(kb, q, opt, out, &j);
        out << j.dump() << "\n";
    } else {
        std::string label = "query " + text;
        if (!(kb.evidence() == Event::one(kb.vocabulary()))) label += "   (evidence " + to_dnf(kb.evidence()) + ")";
        print_report(out, label, rep);
        if (opt.oracle_resolution) run_oracle(kb, q, opt, out, nullptr);
    }
    return exit_code(rep);
}

template <class T>
int compare(const KBFile& file, const std::string& base_text, const std::string& extra_text, const Options& opt,
            std::ostream& out) {
    const auto& kb = file.kb;
    auto base = parse_query(base_text, kb.vocabulary());
    auto extra = parse_event(extra_text, kb.vocabulary());
    auto [before, after] = condent::compare<T>(kb, base, extra);
    auto verdict = classify_revision(before, after);
    ConditionalEvent revised = make_conditional(base.numerator(), base.antecedent() & extra);
    if (opt.json) {
        nlohmann::ordered_json j;
        j["base"] = report_json(before);
        j["revised"] = report_json(after);
        j["verdict"] = to_string(verdict);
        if (opt.oracle_resolution) {
            nlohmann::ordered_json ob, oa;
            run_oracle(kb, base, opt, out, &ob);
            run_oracle(kb, revised, opt, out, &oa);
            j["base"]["oracle"] = ob["oracle"];
            j["revised"]["oracle"] = oa["oracle"];
        }
        out << j.dump() << "\n";
    } else {
        auto interval = [](const BoundsReport<T>& r) {
            if (!r.feasible) return std::string("infeasible");
            if (!r.conditionable) return std::string("not conditionable");
            return "[" + show(*r.lower) + ", " + show(*r.upper) + "]";
        };
        out << "base      " << base_text << "   " << interval(before) << "\n";
        out << "revised   " << base_text << " with evidence " << extra_text << "   " << interval(after) << "\n";
        out << "verdict   " << to_string(verdict) << "\n";
        out << "note: adding assessments to the knowledge base can only narrow a query's interval;\n"
               "      adding evidence changes the conditioning event itself, so the interval may\n"
               "      move, widen, or narrow.\n";
        if (opt.oracle_resolution) {
            run_oracle(kb, base, opt, out, nullptr);
            run_oracle(kb, revised, opt, out, nullptr);
        }
    }
    if (!before.feasible) return kInfeasible;
    if (!before.conditionable || !after.conditionable) return kNotConditionable;
    return kOk;
}

}  // namespace detail

/// Each command loads `path`, runs in exact or float mode per `opt`, and
/// returns the process exit code. Errors are reported on `err`.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

inline int cmd_check(const std::string& path, const Options& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto file = load_kb_file(path);
        return opt.exact ? detail::check<Rational>(file, opt, out) : detail::check<double>(file, opt, out);
    });
}

inline int cmd_query(const std::string& path, const std::string& query_text, const Options& opt, std::ostream& out,
                     std::ostream& err) {
    return guarded(err, [&] {
        auto file = load_kb_file(path);
        return opt.exact ? detail::query<Rational>(file, query_text, opt, out)
                         : detail::query<double>(file, query_text, opt, out);
    });
}

inline int cmd_compare(const std::string& path, const std::string& base_query, const std::string& extra_formula,
                       const Options& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto file = load_kb_file(path);
        return opt.exact ? detail::compare<Rational>(file, base_query, extra_formula, opt, out)
                         : detail::compare<double>(file, base_query, extra_formula, opt, out);
    });
}

/// Exhaustive law report over the conditional events of a k-variable ring.
inline int cmd_laws(int k, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        bool all_ok = true;
        for (const auto& law : oracle::law_names()) {
            auto bad = oracle::exhaustive_law_check(k, law);
            all_ok = all_ok && bad.empty();
            out << std::left << std::setw(20) << law << (bad.empty() ? "holds" : "FAILS") << "  (" << bad.size()
                << " counterexample(s))\n";
        }
        return all_ok ? kOk : kInfeasible;
    });
}

}  // namespace condent::cli
