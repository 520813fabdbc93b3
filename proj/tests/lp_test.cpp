#include "condent/lp.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <optional>
#include <random>

namespace condent {
namespace {

TEST(Solve, SingleUpperBound) {
    LinearProgram<double> lp(1, Sense::Maximize);
    lp.objective = {1.0};
    lp.add({1.0}, Relation::LessEqual, 1.0);
    auto out = solve(lp);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_DOUBLE_EQ(out.value, 1.0);
}

TEST(Solve, NoConstraints) {
    LinearProgram<Rational> lp(1, Sense::Minimize);
    lp.objective = {Rational(1)};
    auto out = solve(lp);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_EQ(out.value, 0);
}

// Independent oracle for two-variable programs max c.x s.t. A x <= b, x >= 0:
// intersect every pair of boundary lines and keep the best feasible vertex.
std::optional<double> vertex_enumeration_max(const std::vector<std::array<double, 3>>& rows, double c0, double c1) {
    std::vector<std::array<double, 3>> lines = rows;
    lines.push_back({-1, 0, 0});
    lines.push_back({0, -1, 0});
    std::optional<double> best;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            double det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
            if (std::abs(det) < 1e-12) continue;
            double x = (lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
            double y = (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
            bool ok = true;
            for (const auto& l : lines) ok = ok && l[0] * x + l[1] * y <= l[2] + 1e-9;
            if (ok && (!best || c0 * x + c1 * y > *best)) best = c0 * x + c1 * y;
        }
    return best;
}

TEST(Solve, TwoDimensionalPolytope) {
    std::vector<std::array<double, 3>> rows{{1, 2, 4}, {3, 1, 6}};
    auto oracle = vertex_enumeration_max(rows, 1, 1);
    ASSERT_TRUE(oracle);
    EXPECT_NEAR(*oracle, 2.8, 1e-12);

    LinearProgram<Rational> lp(2, Sense::Maximize);
    lp.objective = {1, 1};
    lp.add({1, 2}, Relation::LessEqual, 4);
    lp.add({3, 1}, Relation::LessEqual, 6);
    auto out = solve(lp);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_EQ(out.value, Rational(14, 5));
    EXPECT_EQ(out.point[0], Rational(8, 5));
    EXPECT_EQ(out.point[1], Rational(6, 5));
}

TEST(Solve, DetectsInfeasibleAndUnbounded) {
    LinearProgram<Rational> bad(1);
    bad.add({1}, Relation::GreaterEqual, 2);
    bad.add({1}, Relation::LessEqual, 1);
    auto out = solve(bad);
    EXPECT_EQ(out.status, LPStatus::Infeasible);
    EXPECT_EQ(out.infeasibility, 1);

    LinearProgram<double> open(2, Sense::Maximize);
    open.objective = {1, 0};
    open.add({0, 1}, Relation::LessEqual, 1);
    EXPECT_EQ(solve(open).status, LPStatus::Unbounded);
}

TEST(Solve, DimensionMismatch) {
    LinearProgram<double> lp(2);
    lp.add({1.0}, Relation::Equal, 1.0);
    EXPECT_THROW(solve(lp), std::invalid_argument);
}

TEST(Solve, RedundantAndDegenerateRows) {
    LinearProgram<Rational> lp(3, Sense::Maximize);
    lp.objective = {1, 2, 3};
    lp.add({1, 1, 1}, Relation::Equal, 1);
    lp.add({2, 2, 2}, Relation::Equal, 2);  // redundant copy
    lp.add({0, 0, 1}, Relation::LessEqual, 0);  // degenerate
    lp.add({-1, -1, -1}, Relation::Equal, -1);  // negative right-hand side
    auto out = solve(lp);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_EQ(out.value, 2);
    EXPECT_EQ(out.point, (std::vector<Rational>{0, 1, 0}));
}

TEST(Solve, BealeCyclingExampleTerminates) {
    // Classic instance on which the textbook largest-coefficient rule cycles.
    LinearProgram<Rational> lp(4, Sense::Minimize);
    lp.objective = {Rational(-3, 4), 20, Rational(-1, 2), 6};
    lp.add({Rational(1, 4), -8, -1, 9}, Relation::LessEqual, 0);
    lp.add({Rational(1, 2), -12, Rational(-1, 2), 3}, Relation::LessEqual, 0);
    lp.add({0, 0, 1, 0}, Relation::LessEqual, 1);
    auto out = solve(lp);
    ASSERT_EQ(out.status, LPStatus::Optimal);
    EXPECT_EQ(out.value, Rational(-5, 4));
}

struct RandomLP {
    LinearProgram<Rational> exact{0};
    LinearProgram<double> fast{0};
};

// Feasible by construction: constraints are built around a known nonnegative point.
RandomLP random_lp(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-5, 5), dims(1, 8), rows(1, 6), rel(0, 2), slack(0, 3);
    std::size_t n = static_cast<std::size_t>(dims(rng));
    RandomLP r{LinearProgram<Rational>(n, rng() & 1u ? Sense::Maximize : Sense::Minimize), LinearProgram<double>(n)};
    r.fast.sense = r.exact.sense;
    std::vector<int> x0(n);
    for (auto& v : x0) v = slack(rng);
    for (std::size_t j = 0; j < n; ++j) {
        int c = coef(rng);
        r.exact.objective[j] = c;
        r.fast.objective[j] = c;
    }
    int m = rows(rng);
    for (int i = 0; i < m; ++i) {
        std::vector<Rational> a(n);
        std::vector<double> ad(n);
        int dot = 0;
        for (std::size_t j = 0; j < n; ++j) {
            int c = coef(rng);
            a[j] = c;
            ad[j] = c;
            dot += c * x0[j];
        }
        Relation rl = static_cast<Relation>(rel(rng));
        int b = rl == Relation::Equal ? dot : rl == Relation::LessEqual ? dot + slack(rng) : dot - slack(rng);
        r.exact.add(a, rl, b);
        r.fast.add(ad, rl, b);
    }
    // Keep every instance bounded.
    std::vector<Rational> ones(n, Rational(1));
    r.exact.add(ones, Relation::LessEqual, 50);
    r.fast.add(std::vector<double>(n, 1.0), Relation::LessEqual, 50);
    return r;
}

TEST(Properties, ExactAndFloatAgreeOnRandomFeasiblePrograms) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
        auto r = random_lp(rng);
        auto e = solve(r.exact);
        auto f = solve(r.fast);
        ASSERT_EQ(e.status, LPStatus::Optimal) << t;
        ASSERT_EQ(f.status, LPStatus::Optimal) << t;
        ASSERT_NEAR(static_cast<double>(e.value), f.value, 1e-6) << t;

        // Reported points are feasible and attain the value.
        for (const auto& c : r.exact.constraints) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < c.coefficients.size(); ++j) lhs += c.coefficients[j] * e.point[j];
            if (c.relation == Relation::Equal) ASSERT_EQ(lhs, c.bound);
            if (c.relation == Relation::LessEqual) ASSERT_LE(lhs, c.bound);
            if (c.relation == Relation::GreaterEqual) ASSERT_GE(lhs, c.bound);
        }
        for (const auto& v : e.point) ASSERT_GE(v, 0);
    }
}

TEST(Properties, WeakDualitySpotCheck) {
    // Any feasible point is no better than the reported optimum.
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        auto r = random_lp(rng);
        auto e = solve(r.exact);
        ASSERT_EQ(e.status, LPStatus::Optimal);
        for (int s = 0; s < 200; ++s) {
            std::vector<Rational> x(r.exact.variable_count());
            for (auto& v : x) v = Rational(static_cast<long>(rng() % 13), 2);
            bool feasible = true;
            for (const auto& c : r.exact.constraints) {
                Rational lhs = 0;
                for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
                feasible = feasible && (c.relation == Relation::Equal       ? lhs == c.bound
                                        : c.relation == Relation::LessEqual ? lhs <= c.bound
                                                                            : lhs >= c.bound);
            }
            if (!feasible) continue;
            Rational val = 0;
            for (std::size_t j = 0; j < x.size(); ++j) val += r.exact.objective[j] * x[j];
            if (r.exact.sense == Sense::Maximize) ASSERT_LE(val, e.value);
            else ASSERT_GE(val, e.value);
        }
    }
}

TEST(Properties, Deterministic) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        auto r = random_lp(rng);
        auto a = solve(r.fast), b = solve(r.fast);
        ASSERT_EQ(a.point, b.point);
        ASSERT_EQ(a.value, b.value);
    }
}

}  // namespace
}  // namespace condent
