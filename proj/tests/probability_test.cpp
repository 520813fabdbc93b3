#include "condent/probability.hpp"

#include <gtest/gtest.h>

#include <random>

namespace condent {
namespace {

const Vocabulary ab({"a", "b"});
const Vocabulary abc({"a", "b", "c"});

Event E(const char* f, const Vocabulary& v = ab) { return parse_event(f, v); }

std::vector<Event> atoms_of(const Vocabulary& v) {
    std::vector<Event> cells;
    for (std::size_t a = 0; a < v.atom_count(); ++a) cells.push_back(Event::from_atoms(v, {a}));
    return cells;
}

ProbabilityModel<Rational> uniform(const Vocabulary& v) {
    return ProbabilityModel<Rational>::over_atoms(v, std::vector<Rational>(v.atom_count(), Rational(1, v.atom_count())));
}

TEST(Model, ValidatesInvariants) {
    auto cells = atoms_of(ab);
    EXPECT_THROW(ProbabilityModel<double>(cells, {0.5, 0.5, 0.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(ProbabilityModel<double>(cells, {0.5, 0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(ProbabilityModel<double>(cells, {0.3, 0.3, 0.3, 0.3}), std::invalid_argument);
    EXPECT_THROW(ProbabilityModel<double>({E("a"), E("b")}, {0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(ProbabilityModel<double>({E("a")}, {1.0}), std::invalid_argument);
    EXPECT_THROW(ProbabilityModel<Rational>(cells, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4) + Rational(1, 1000000)}),
                 std::invalid_argument);
}

TEST(Prob, Examples) {
    auto m = uniform(ab);
    EXPECT_EQ(prob(m, Event::one(ab)), 1);
    EXPECT_EQ(prob(m, Event::zero(ab)), 0);
    EXPECT_EQ(prob(m, E("a")), Rational(1, 2));
}

TEST(Prob, RequiresDecomposableEvents) {
    ProbabilityModel<double> m({E("a"), E("~a")}, {0.4, 0.6});
    EXPECT_DOUBLE_EQ(prob(m, E("a")), 0.4);
    EXPECT_THROW(prob(m, E("b")), NotDecomposable);
}

TEST(CondProb, Examples) {
    auto m = uniform(ab);
    EXPECT_EQ(cond_prob(m, ConditionalEvent::of(E("a"))), prob(m, E("a")));
    EXPECT_EQ(cond_prob(m, make_conditional(E("b"), E("b"))), 1);
    EXPECT_EQ(cond_prob(m, make_conditional(E("a"), E("a | b"))), Rational(2, 3));
}

TEST(CondProb, ZeroAntecedentIsAnError) {
    auto m = ProbabilityModel<double>::over_atoms(ab, {1.0, 0.0, 0.0, 0.0});
    EXPECT_THROW(cond_prob(m, make_conditional(E("a"), E("a"))), ZeroAntecedent);
    EXPECT_THROW(check_star_identity(m, E("a"), E("a")), ZeroAntecedent);
}

TEST(StarIdentity, Examples) {
    auto m = uniform(ab);
    EXPECT_EQ(check_star_identity(m, E("a"), E("b")), 0);
    EXPECT_EQ(check_star_identity(m, E("a"), Event::one(ab)), 0);
    auto d = random_model<double>(atoms_of(abc), 5);
    EXPECT_EQ(check_star_identity(d, E("a", abc), Event::one(abc)), 0.0);
    EXPECT_LE(check_star_identity(d, E("a & c", abc), E("b | c", abc)), 1e-12);
}

TEST(RandomModel, DeterministicAndOnSimplex) {
    auto cells = atoms_of(ab);
    auto m1 = random_model<double>(cells, 42);
    auto m2 = random_model<double>(cells, 42);
    EXPECT_EQ(m1.masses(), m2.masses());
    EXPECT_NE(m1.masses(), random_model<double>(cells, 43).masses());
    double s = 0;
    for (double x : m1.masses()) {
        EXPECT_GE(x, 0.0);
        s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);

    auto exact = random_model<Rational>(cells, 42);
    Rational total = 0;
    for (const auto& x : exact.masses()) total += x;
    EXPECT_EQ(total, 1);
}

TEST(RandomModel, MeanMassIsUniform) {
    auto cells = atoms_of(ab);
    std::vector<double> mean(cells.size(), 0.0);
    const int draws = 10000;
    for (int s = 0; s < draws; ++s) {
        auto m = random_model<double>(cells, static_cast<std::uint64_t>(s));
        for (std::size_t j = 0; j < cells.size(); ++j) mean[j] += m.masses()[j] / draws;
    }
    for (double x : mean) EXPECT_NEAR(x, 0.25, 0.01);
}

TEST(Properties, AdditiveOverDisjointUnions) {
    auto cells = atoms_of(abc);
    std::mt19937_64 rng(3);
    for (int n = 0; n < 500; ++n) {
        auto m = random_model<double>(cells, rng());
        Event x(abc), y(abc);
        for (std::size_t a = 0; a < 8; ++a) {
            auto r = rng() % 3;
            if (r == 0) x.set(a);
            else if (r == 1) y.set(a);
        }
        ASSERT_NEAR(prob(m, x | y), prob(m, x) + prob(m, y), 1e-12);
    }
}

TEST(Properties, OrderMonotonicityOnTwoVariables) {
    auto all = all_conditionals(ab);
    auto cells = atoms_of(ab);
    std::vector<ProbabilityModel<double>> models;
    for (std::uint64_t s = 0; s < 200; ++s) models.push_back(random_model<double>(cells, 1000 + s));
    std::size_t checked = 0;
    for (const auto& p : all)
        for (const auto& q : all) {
            if (!gn_leq(p, q)) continue;
            for (const auto& m : models) {
                if (prob(m, p.antecedent()) < 1e-6 || prob(m, q.antecedent()) < 1e-6) continue;
                ASSERT_LE(cond_prob(m, p), cond_prob(m, q) + 1e-12);
                ++checked;
            }
        }
    EXPECT_GT(checked, 100000u);
}

TEST(Properties, ConditioningIsNotMonotoneInTheAntecedent) {
    auto a = E("a", abc), b = E("b", abc), c = E("c", abc);
    auto p = make_conditional(a, b), q = make_conditional(a, b & c);
    bool dropped = false, rose = false;
    for (std::uint64_t s = 0; s < 200 && !(dropped && rose); ++s) {
        auto m = random_model<double>(atoms_of(abc), s);
        double before = cond_prob(m, p), after = cond_prob(m, q);
        dropped = dropped || after < before;
        rose = rose || after > before;
    }
    EXPECT_TRUE(dropped);
    EXPECT_TRUE(rose);
}

TEST(Serialize, OrderedCellMassPairs) {
    auto m = uniform(ab);
    auto s = serialize(m);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s[0].first, "~a & ~b");
    EXPECT_EQ(s[3].first, "a & b");
    EXPECT_EQ(s[3].second, Rational(1, 4));
}

}  // namespace
}  // namespace condent
