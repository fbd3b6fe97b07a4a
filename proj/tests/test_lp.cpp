#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vassrank;
using namespace vassrank::lp;

namespace {

LinearProgram one_var() {
    LinearProgram p;
    p.add_variable("x");
    return p;
}

}  // namespace

TEST(Lp, SingleConstraintOptimum) {
    auto p = one_var();
    p.add_constraint({{0, Rat(1)}}, Relation::LessEqual, Rat(3));
    p.set_objective(Sense::Maximize, {{0, Rat(1)}});
    const auto out = solve(p);
    ASSERT_TRUE(is_optimal(out));
    const auto& o = std::get<Optimal>(out);
    EXPECT_EQ(o.point, RatVector{Rat(3)});
    EXPECT_EQ(o.value, 3);
    ASSERT_TRUE(o.dual_point);
    EXPECT_TRUE(oracles::valid_dual(p, *o.dual_point, o.value));
}

TEST(Lp, ContradictoryBoundsAreInfeasible) {
    auto p = one_var();
    p.add_constraint({{0, Rat(1)}}, Relation::LessEqual, Rat(-1));
    const auto out = solve(p);
    ASSERT_TRUE(is_infeasible(out));
    const auto& cert = std::get<Infeasible>(out).farkas_certificate;
    ASSERT_TRUE(cert);
    EXPECT_TRUE(oracles::valid_farkas(p, *cert));
}

TEST(Lp, UnboundedAxis) {
    auto p = one_var();
    p.set_objective(Sense::Maximize, {{0, Rat(1)}});
    const auto out = solve(p);
    ASSERT_TRUE(is_unbounded(out));
    const auto& u = std::get<Unbounded>(out);
    EXPECT_EQ(u.feasible_point, RatVector{Rat(0)});
    EXPECT_EQ(u.ray, RatVector{Rat(1)});
}

TEST(Lp, FreeVariablesAndEqualities) {
    // min x + y  s.t.  x - y = 1, x >= -2, y free, y >= -5 as a row
    LinearProgram p;
    p.add_variable("x", Rat(-2));
    p.add_variable("y", std::nullopt);
    p.add_constraint({{0, Rat(1)}, {1, Rat(-1)}}, Relation::Equal, Rat(1));
    p.add_constraint({{1, Rat(1)}}, Relation::GreaterEqual, Rat(-5));
    p.set_objective(Sense::Minimize, {{0, Rat(1)}, {1, Rat(1)}});
    const auto out = solve(p);
    ASSERT_TRUE(is_optimal(out));
    const auto& o = std::get<Optimal>(out);
    EXPECT_EQ(o.point, (RatVector{Rat(-2), Rat(-3)}));
    EXPECT_EQ(o.value, -5);
    EXPECT_TRUE(oracles::valid_dual(p, *o.dual_point, o.value));
}

TEST(Lp, UpperBoundOnlyVariable) {
    // max -x  s.t.  x <= 4 (bound), x >= 1 (row): optimum at x = 1
    LinearProgram p;
    p.add_variable("x", std::nullopt, Rat(4));
    p.add_constraint({{0, Rat(1)}}, Relation::GreaterEqual, Rat(1));
    p.set_objective(Sense::Maximize, {{0, Rat(-1)}});
    const auto out = solve(p);
    ASSERT_TRUE(is_optimal(out));
    EXPECT_EQ(std::get<Optimal>(out).point, RatVector{Rat(1)});
    EXPECT_TRUE(oracles::valid_dual(p, *std::get<Optimal>(out).dual_point, Rat(-1)));
}

TEST(Lp, RejectsMalformedRows) {
    LinearProgram p;
    p.add_variable("x");
    p.constraints.push_back(Constraint{RatVector{Rat(1), Rat(2)}, Relation::LessEqual, Rat(0)});
    EXPECT_THROW(solve(p), MalformedProgram);
    LinearProgram q;
    q.add_variable("x");
    EXPECT_THROW(q.add_constraint({{3, Rat(1)}}, Relation::LessEqual, Rat(0)), MalformedProgram);
}

TEST(Lp, DegenerateCyclingExampleTerminates) {
    // Beale's classic cycling example for the textbook largest-coefficient rule.
    LinearProgram p;
    for (int i = 0; i < 4; ++i) p.add_variable("x" + std::to_string(i));
    p.add_constraint({{0, Rat(1, 4)}, {1, Rat(-8)}, {2, Rat(-1)}, {3, Rat(9)}}, Relation::LessEqual, Rat(0));
    p.add_constraint({{0, Rat(1, 2)}, {1, Rat(-12)}, {2, Rat(-1, 2)}, {3, Rat(3)}}, Relation::LessEqual, Rat(0));
    p.add_constraint({{2, Rat(1)}}, Relation::LessEqual, Rat(1));
    p.set_objective(Sense::Maximize, {{0, Rat(3, 4)}, {1, Rat(-20)}, {2, Rat(1, 2)}, {3, Rat(-6)}});
    const auto out = solve(p);
    ASSERT_TRUE(is_optimal(out));
    EXPECT_EQ(std::get<Optimal>(out).value, Rat(5, 4));
    EXPECT_TRUE(oracles::valid_dual(p, *std::get<Optimal>(out).dual_point, Rat(5, 4)));
}

TEST(ScaleToInteger, Examples) {
    auto a = scale_to_integer(RatVector{Rat(1, 2), Rat(1, 3)});
    EXPECT_EQ(a.values, (IntVector{Integer(3), Integer(2)}));
    EXPECT_EQ(a.multiplier, 6);
    auto b = scale_to_integer(RatVector{Rat(2), Rat(5)});
    EXPECT_EQ(b.values, (IntVector{Integer(2), Integer(5)}));
    EXPECT_EQ(b.multiplier, 1);
    auto c = scale_to_integer(RatVector{Rat(3, 4), Rat(1, 2), Rat(5, 4)});
    EXPECT_EQ(c.values, (IntVector{Integer(3), Integer(2), Integer(5)}));
    EXPECT_EQ(c.multiplier, 4);
}

TEST(Rat, LowestTermsWithPositiveDenominator) {
    const auto q = make_rat(Integer(4), Integer(-6));
    EXPECT_EQ(q.get_num(), -2);
    EXPECT_EQ(q.get_den(), 3);
    EXPECT_THROW(make_rat(Integer(1), Integer(0)), std::domain_error);
}

namespace {

LinearProgram random_program(std::mt19937_64& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    LinearProgram p;
    const int n = pick(1, 3);
    const bool box_as_rows = pick(0, 1) == 1;
    for (int j = 0; j < n; ++j) {
        if (box_as_rows) {
            p.add_variable("x" + std::to_string(j), std::nullopt);
        } else {
            p.add_variable("x" + std::to_string(j), Rat(pick(-6, 0)), Rat(pick(0, 6)));
        }
    }
    if (box_as_rows) {
        for (int j = 0; j < n; ++j) {
            p.add_constraint({{static_cast<VarId>(j), Rat(1)}}, Relation::GreaterEqual, Rat(-6));
            p.add_constraint({{static_cast<VarId>(j), Rat(1)}}, Relation::LessEqual, Rat(6));
        }
    }
    const int m = pick(1, 5);
    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<VarId, Rat>> terms;
        for (int j = 0; j < n; ++j) terms.emplace_back(j, make_rat(Integer(pick(-4, 4)), Integer(pick(1, 3))));
        const auto rel = static_cast<Relation>(pick(0, 2));
        p.add_constraint(terms, rel, Rat(pick(-8, 8)));
    }
    std::vector<std::pair<VarId, Rat>> obj;
    for (int j = 0; j < n; ++j) obj.emplace_back(j, Rat(pick(-5, 5)));
    p.set_objective(pick(0, 1) ? Sense::Maximize : Sense::Minimize, obj);
    return p;
}

}  // namespace

TEST(LpProperty, AgreesWithVertexEnumerationAndCertifiesEveryOutcome) {
    std::mt19937_64 rng(2024);
    int optimal = 0, infeasible = 0;
    for (int k = 0; k < 400; ++k) {
        const auto p = random_program(rng);
        const auto oracle = oracles::brute_force(p);
        const auto out = solve(p);
        if (!oracle.feasible) {
            ASSERT_TRUE(is_infeasible(out)) << "instance " << k;
            const auto& cert = std::get<Infeasible>(out).farkas_certificate;
            ASSERT_TRUE(cert);
            EXPECT_TRUE(oracles::valid_farkas(p, *cert)) << "instance " << k;
            ++infeasible;
            continue;
        }
        ASSERT_TRUE(is_optimal(out)) << "instance " << k;
        const auto& o = std::get<Optimal>(out);
        EXPECT_TRUE(oracles::feasible_point(p, o.point)) << "instance " << k;
        EXPECT_EQ(o.value, *oracle.best) << "instance " << k;
        ASSERT_TRUE(o.dual_point);
        EXPECT_TRUE(oracles::valid_dual(p, *o.dual_point, o.value)) << "instance " << k;
        ++optimal;
    }
    // Both outcomes must actually be exercised.
    EXPECT_GT(optimal, 50);
    EXPECT_GT(infeasible, 20);
}

TEST(LpProperty, UnboundedRaysImproveAndStayFeasible) {
    std::mt19937_64 rng(77);
    int seen = 0;
    for (int k = 0; k < 300; ++k) {
        auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        LinearProgram p;
        const int n = pick(1, 3);
        for (int j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j), pick(0, 1) ? std::optional<Rat>(Rat(0)) : std::nullopt);
        for (int i = 0; i < pick(0, 3); ++i) {
            std::vector<std::pair<VarId, Rat>> terms;
            for (int j = 0; j < n; ++j) terms.emplace_back(j, Rat(pick(-3, 3)));
            p.add_constraint(terms, static_cast<Relation>(pick(0, 2)), Rat(pick(-3, 3)));
        }
        std::vector<std::pair<VarId, Rat>> obj;
        for (int j = 0; j < n; ++j) obj.emplace_back(j, Rat(pick(-3, 3)));
        p.set_objective(Sense::Maximize, obj);
        const auto out = solve(p);
        if (!is_unbounded(out)) continue;
        ++seen;
        const auto& u = std::get<Unbounded>(out);
        ASSERT_TRUE(oracles::feasible_point(p, u.feasible_point));
        EXPECT_GT(oracles::row_dot(p.objective->coefficients, u.ray), 0);
        for (int step : {1, 10, 1000}) {
            RatVector x = u.feasible_point;
            for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rat(step) * u.ray[j];
            EXPECT_TRUE(oracles::feasible_point(p, x));
        }
    }
    EXPECT_GT(seen, 20);
}
