#pragma once

#include "condent/numeric.hpp"

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace condent {

enum class Relation { Equal, LessEqual, GreaterEqual };
enum class Sense { Minimize, Maximize };
enum class LPStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "?";
}

template <class T>
struct LinearConstraint {
    std::vector<T> coefficients;
    Relation relation;
    T bound;
};

/// Optimize objective . x subject to the constraints and x >= 0.
template <class T>
struct LinearProgram {
    Sense sense = Sense::Minimize;
    std::vector<T> objective;
    std::vector<LinearConstraint<T>> constraints;

    explicit LinearProgram(std::size_t variables, Sense s = Sense::Minimize)
        : sense(s), objective(variables, T(0)) {}

    std::size_t variable_count() const noexcept { return objective.size(); }

    void add(std::vector<T> coefficients, Relation rel, T bound) {
        constraints.push_back({std::move(coefficients), rel, std::move(bound)});
    }
};

template <class T>
struct LPOutcome {
    LPStatus status = LPStatus::Infeasible;
    T value{0};
    std::vector<T> point;
    /// Phase-1 optimum: total artificial mass left over; positive iff infeasible.
    T infeasibility{0};
};

namespace detail {

/// Dense simplex tableau. Row `rows()` holds reduced costs, its last entry the
/// negated objective value. Entering and leaving choices follow Bland's rule.
template <class T>
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), T(0)), basis_(rows, 0) {}

    T& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
    T& rhs(std::size_t i) { return at(i, n_); }
    T& cost(std::size_t j) { return at(m_, j); }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c, const T& eps) {
        T p = at(r, c);
        for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
        at(r, c) = T(1);
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            T f = at(i, c);
            if (f == T(0)) continue;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (at(r, j) == T(0)) continue;
                at(i, j) -= f * at(r, j);
                if constexpr (!ScalarTraits<T>::exact) {
                    if (abs_value(at(i, j)) < eps * T(1e-3)) at(i, j) = T(0);
                }
            }
            at(i, c) = T(0);
        }
        basis_[r] = c;
    }

    /// Loads costs for minimization and prices out the current basis.
    void set_costs(const std::vector<T>& c) {
        for (std::size_t j = 0; j <= n_; ++j) at(m_, j) = j < c.size() ? c[j] : T(0);
        for (std::size_t i = 0; i < m_; ++i) {
            T cb = basis_[i] < c.size() ? c[basis_[i]] : T(0);
            if (cb == T(0)) continue;
            for (std::size_t j = 0; j <= n_; ++j) at(m_, j) -= cb * at(i, j);
        }
    }

    /// Runs to optimality over columns < `usable`. Returns false if unbounded.
    bool optimize(std::size_t usable, const T& eps) {
        for (;;) {
            std::size_t enter = usable;
            for (std::size_t j = 0; j < usable; ++j) {
                if (at(m_, j) < -eps) {
                    enter = j;
                    break;
                }
            }
            if (enter == usable) return true;

            std::size_t leave = m_;
            T best{0};
            for (std::size_t i = 0; i < m_; ++i) {
                if (!(at(i, enter) > eps)) continue;
                T ratio = at(i, n_) / at(i, enter);
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter, eps);
        }
    }

    void drop_row(std::size_t r) {
        std::vector<T> next;
        next.reserve(m_ * (n_ + 1));
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            for (std::size_t j = 0; j <= n_; ++j) next.push_back(at(i, j));
        }
        a_ = std::move(next);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

private:
    std::size_t m_, n_;
    std::vector<T> a_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Two-phase simplex with Bland's rule. Exact when T is Rational.
template <class T>
LPOutcome<T> solve(const LinearProgram<T>& lp) {
    using Traits = ScalarTraits<T>;
    const T eps = Traits::pivot_eps();
    const std::size_t n = lp.variable_count();
    for (const auto& c : lp.constraints)
        if (c.coefficients.size() != n)
            throw std::invalid_argument("constraint has " + std::to_string(c.coefficients.size()) +
                                        " coefficients, program has " + std::to_string(n) + " variables");

    // Normalize to nonnegative right-hand sides.
    struct Row {
        std::vector<T> a;
        Relation rel;
        T b;
    };
    std::vector<Row> rows;
    rows.reserve(lp.constraints.size());
    for (const auto& c : lp.constraints) {
        Row r{c.coefficients, c.relation, c.bound};
        if (r.b < T(0)) {
            for (auto& v : r.a) v = -v;
            r.b = -r.b;
            if (r.rel == Relation::LessEqual) r.rel = Relation::GreaterEqual;
            else if (r.rel == Relation::GreaterEqual) r.rel = Relation::LessEqual;
        }
        rows.push_back(std::move(r));
    }

    std::size_t slacks = 0, artificials = 0;
    for (const auto& r : rows) {
        if (r.rel != Relation::Equal) ++slacks;
        if (r.rel != Relation::LessEqual) ++artificials;
    }
    const std::size_t first_art = n + slacks;
    const std::size_t cols = first_art + artificials;

    detail::Tableau<T> tab(rows.size(), cols);
    std::size_t next_slack = n, next_art = first_art;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = rows[i].a[j];
        tab.rhs(i) = rows[i].b;
        switch (rows[i].rel) {
            case Relation::LessEqual:
                tab.at(i, next_slack) = T(1);
                tab.basis()[i] = next_slack++;
                break;
            case Relation::GreaterEqual:
                tab.at(i, next_slack++) = T(-1);
                tab.at(i, next_art) = T(1);
                tab.basis()[i] = next_art++;
                break;
            case Relation::Equal:
                tab.at(i, next_art) = T(1);
                tab.basis()[i] = next_art++;
                break;
        }
    }

    LPOutcome<T> out;

    // Phase 1: minimize the sum of artificials.
    if (artificials > 0) {
        std::vector<T> phase1(cols, T(0));
        for (std::size_t j = first_art; j < cols; ++j) phase1[j] = T(1);
        tab.set_costs(phase1);
        tab.optimize(cols, eps);  // bounded below by 0
        out.infeasibility = -tab.rhs(tab.rows());
        if (out.infeasibility < T(0)) out.infeasibility = T(0);
        if (out.infeasibility > Traits::feas_eps()) {
            out.status = LPStatus::Infeasible;
            return out;
        }
        // Drive remaining artificials out of the basis; rows with no usable pivot are redundant.
        for (std::size_t i = 0; i < tab.rows();) {
            if (tab.basis()[i] < first_art) {
                ++i;
                continue;
            }
            std::size_t c = first_art;
            for (std::size_t j = 0; j < first_art; ++j) {
                if (abs_value(tab.at(i, j)) > eps) {
                    c = j;
                    break;
                }
            }
            if (c == first_art) {
                tab.drop_row(i);
            } else {
                tab.pivot(i, c, eps);
                ++i;
            }
        }
    }

    // Phase 2.
    std::vector<T> costs(cols, T(0));
    for (std::size_t j = 0; j < n; ++j) costs[j] = lp.sense == Sense::Minimize ? lp.objective[j] : T(-lp.objective[j]);
    tab.set_costs(costs);
    if (!tab.optimize(first_art, eps)) {
        out.status = LPStatus::Unbounded;
        return out;
    }

    out.status = LPStatus::Optimal;
    out.point.assign(n, T(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        std::size_t b = tab.basis()[i];
        if (b < n) {
            T v = tab.rhs(i);
            out.point[b] = v < T(0) ? T(0) : v;
        }
    }
    out.value = T(0);
    for (std::size_t j = 0; j < n; ++j) out.value += lp.objective[j] * out.point[j];
    return out;
}

}  // namespace condent
