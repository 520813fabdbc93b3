#pragma once

#include "condent/conditional.hpp"
#include "condent/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace condent {

class ZeroAntecedent : public std::domain_error {
public:
    ZeroAntecedent() : std::domain_error("conditioning event has probability zero") {}
};

class NotDecomposable : public std::invalid_argument {
public:
    NotDecomposable() : std::invalid_argument("event is not a union of the model's cells") {}
};

/// Masses Lambda_j on the cells of a partition of the sample space.
template <class T>
class ProbabilityModel {
public:
    ProbabilityModel(std::vector<Event> cells, std::vector<T> masses)
        : cells_(std::move(cells)), masses_(std::move(masses)) {
        if (cells_.empty()) throw std::invalid_argument("probability model needs at least one cell");
        if (cells_.size() != masses_.size()) throw std::invalid_argument("cell and mass counts differ");
        const Vocabulary& vocab = cells_.front().vocabulary();
        Event seen(vocab);
        for (const auto& c : cells_) {
            if (!(c.vocabulary() == vocab)) throw VocabularyMismatch();
            if (!(c & seen).is_zero()) throw std::invalid_argument("model cells overlap");
            seen = seen | c;
        }
        if (seen.count() != vocab.atom_count()) throw std::invalid_argument("model cells do not cover the sample space");
        T total(0);
        for (const auto& m : masses_) {
            if (m < T(0)) throw std::invalid_argument("negative mass");
            total += m;
        }
        T tol = ScalarTraits<T>::exact ? T(0) : ScalarTraits<T>::from_double(1e-9);
        if (abs_value(T(total - T(1))) > tol) throw std::invalid_argument("masses do not sum to 1");
    }

    /// One cell per atom.
    static ProbabilityModel over_atoms(const Vocabulary& vocab, std::vector<T> masses) {
        std::vector<Event> cells;
        for (std::size_t a = 0; a < vocab.atom_count(); ++a) cells.push_back(Event::from_atoms(vocab, {a}));
        return ProbabilityModel(std::move(cells), std::move(masses));
    }

    const std::vector<Event>& cells() const noexcept { return cells_; }
    const std::vector<T>& masses() const noexcept { return masses_; }
    const Vocabulary& vocabulary() const noexcept { return cells_.front().vocabulary(); }

private:
    std::vector<Event> cells_;
    std::vector<T> masses_;
};

template <class T>
T prob(const ProbabilityModel<T>& m, const Event& x) {
    T total(0);
    for (std::size_t j = 0; j < m.cells().size(); ++j) {
        const Event& cell = m.cells()[j];
        if (leq(cell, x)) total += m.masses()[j];
        else if (!(cell & x).is_zero()) throw NotDecomposable();
    }
    return total;
}

template <class T>
T cond_prob(const ProbabilityModel<T>& m, const ConditionalEvent& ce) {
    T denom = prob(m, ce.antecedent());
    if (denom == T(0)) throw ZeroAntecedent();
    return T(prob(m, ce.numerator()) / denom);
}

/// |P(a|b) - P(ab) - P(a|b) P(b')|; zero up to rounding for every model.
template <class T>
T check_star_identity(const ProbabilityModel<T>& m, const Event& a, const Event& b) {
    T pb = prob(m, b);
    if (pb == T(0)) throw ZeroAntecedent();
    T pab = prob(m, a & b);
    T cond = T(pab / pb);
    T pnotb = prob(m, ~b);
    return abs_value(T(cond - pab - cond * pnotb));
}

/// Masses drawn uniformly from the standard simplex (normalized exponentials),
/// reproducible for a given seed.
template <class T>
ProbabilityModel<T> random_model(std::vector<Event> cells, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<T> masses;
    masses.reserve(cells.size());
    T total(0);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        // 1 - u lies in (0, 1], so the logarithm is finite.
        double e = -std::log(1.0 - unit(rng));
        masses.push_back(ScalarTraits<T>::from_double(e));
        total += masses.back();
    }
    if (total == T(0)) {
        masses.assign(cells.size(), T(0));
        masses.front() = T(1);
    } else {
        for (auto& m : masses) m = T(m / total);
    }
    if constexpr (!ScalarTraits<T>::exact) {
        // Push the rounding residue into the largest mass so the sum is 1 to within an ulp.
        double s = 0;
        for (auto m : masses) s += m;
        auto big = std::max_element(masses.begin(), masses.end());
        *big = std::max(0.0, *big + (1.0 - s));
    }
    return ProbabilityModel<T>(std::move(cells), std::move(masses));
}

/// Ordered (cell DNF, mass) pairs.
template <class T>
std::vector<std::pair<std::string, T>> serialize(const ProbabilityModel<T>& m) {
    std::vector<std::pair<std::string, T>> out;
    for (std::size_t j = 0; j < m.cells().size(); ++j) out.emplace_back(to_dnf(m.cells()[j]), m.masses()[j]);
    return out;
}

}  // namespace condent
