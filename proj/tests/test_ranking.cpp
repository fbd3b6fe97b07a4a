#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace vassrank;
using namespace fixtures;

TEST(Analyze, VprogHasOrderOneRanking) {
    const auto v = vprog();
    const auto res = analyze(v);
    ASSERT_TRUE(res.terminating());
    const auto& cert = res.certificate();
    EXPECT_EQ(cert.order, 1u);
    ASSERT_TRUE(cert.root);
    EXPECT_EQ(cert.root->r, iv({3, 1}));
    EXPECT_EQ(cert.root->z.at(loc(v, "l1")), 0);
    EXPECT_EQ(cert.root->z.at(loc(v, "l2")), 1);
    EXPECT_TRUE(verify_ranking(v, cert));
}

TEST(Analyze, VcsysHasOrderTwo) {
    const auto v = vcsys();
    const auto res = analyze(v);
    ASSERT_TRUE(res.terminating());
    EXPECT_EQ(res.certificate().order, 2u);
    const std::map<TransId, std::size_t> levels{{tid(0), 1}, {tid(1), 2}, {tid(2), 1}, {tid(3), 2}};
    EXPECT_EQ(res.certificate().transition_levels, levels);
    EXPECT_EQ(res.certificate().root->children.size(), 2u);
    EXPECT_TRUE(verify_ranking(v, res.certificate()));
}

TEST(Analyze, VexpTerminatesAndRanksTheInnerLoops) {
    const auto v = vexp();
    const auto res = analyze(v);
    ASSERT_TRUE(res.terminating());
    EXPECT_TRUE(verify_ranking(v, res.certificate()));
    EXPECT_EQ(res.certificate().order, 2u);
}

TEST(Analyze, SwapCycleGivesWitness) {
    const auto v = swap_cycle();
    const auto res = analyze(v);
    ASSERT_FALSE(res.terminating());
    EXPECT_TRUE(verify_witness(v, res.witness()));
    EXPECT_EQ(res.witness().value, iv({0, 0}));
}

TEST(Analyze, SingleSelfLoops) {
    const auto dec = analyze(self_loop({-1}));
    ASSERT_TRUE(dec.terminating());
    EXPECT_EQ(dec.certificate().order, 1u);
    EXPECT_EQ(dec.certificate().root->r, iv({1}));

    const auto zero = analyze(self_loop({0}));
    ASSERT_FALSE(zero.terminating());
    EXPECT_EQ(zero.witness().cycle.length(), 1u);
}

TEST(Analyze, NoTransitionsGivesEmptyCertificate) {
    const auto v = Vass::create(2, {"a", "b"}, {});
    const auto res = analyze(v);
    ASSERT_TRUE(res.terminating());
    EXPECT_FALSE(res.certificate().root);
    EXPECT_EQ(res.certificate().order, 0u);
    EXPECT_TRUE(verify_ranking(v, res.certificate()));
}

TEST(Analyze, DagOfComponentsGetsConstantLevel) {
    const auto v = Vass::create(1, {"a", "b", "c"},
                                {{"a", "a", iv({-1})}, {"a", "b", iv({5})}, {"b", "c", iv({5})}, {"c", "c", iv({-1})}});
    const auto res = analyze(v);
    ASSERT_TRUE(res.terminating());
    const auto& cert = res.certificate();
    EXPECT_TRUE(verify_ranking(v, cert));
    EXPECT_EQ(cert.order, 2u);
    EXPECT_EQ(res.diagnostics.component_order, 1u);
    EXPECT_EQ(cert.root->r, iv({0}));
    EXPECT_EQ(cert.root->z.at(loc(v, "a")), 2);
    EXPECT_EQ(cert.root->z.at(loc(v, "b")), 1);
    EXPECT_EQ(cert.root->z.at(loc(v, "c")), 0);
    EXPECT_EQ(cert.transition_levels.at(tid(1)), 1u);
    EXPECT_EQ(cert.transition_levels.at(tid(0)), 2u);
}

TEST(Analyze, DisjointUnionWithANonTerminatingPartIsNonTerminating) {
    const auto v = Vass::create(2, {"p", "q", "a", "b"},
                                {{"p", "q", iv({-1, 0})}, {"q", "p", iv({0, -1})}, {"a", "b", iv({1, -1})},
                                 {"b", "a", iv({-1, 1})}});
    const auto res = analyze(v);
    ASSERT_FALSE(res.terminating());
    EXPECT_TRUE(verify_witness(v, res.witness()));
    EXPECT_TRUE(v.name(res.witness().start) == "a" || v.name(res.witness().start) == "b");
}

TEST(AnalyzeConnected, RejectsDisconnectedInput) {
    const auto v = Vass::create(1, {"a", "b"}, {{"a", "b", iv({-1})}});
    EXPECT_THROW(analyze_connected(v), NotConnected);
}

TEST(Combinator, CombineRejectsCrossingTransitions) {
    const auto v = vprog();
    AffineRankSolution q;
    q.r = iv({1, 0});
    q.strict = {tid(0)};
    EXPECT_THROW(combine_combinator(v, q, {}), NotFullyDecomposable);
}

TEST(Combinator, CombineShiftsChildLevels) {
    const auto v = vcsys();
    AffineRankSolution q;
    q.r = iv({2, 2, 0});
    q.z = {{loc(v, "l_tt"), 1}, {loc(v, "l_ff"), 0}};
    q.strict = {tid(0), tid(2)};
    RankingCertificate tt;
    tt.root = RankingNode{{loc(v, "l_tt")}, iv({0, 1, 0}), {{loc(v, "l_tt"), 0}}, {}};
    tt.transition_levels = {{tid(3), 1}};
    tt.order = 1;
    RankingCertificate ff;
    ff.root = RankingNode{{loc(v, "l_ff")}, iv({1, 0, 0}), {{loc(v, "l_ff"), 0}}, {}};
    ff.transition_levels = {{tid(1), 1}};
    ff.order = 1;
    const auto cert = combine_combinator(v, q, {tt, ff});
    EXPECT_EQ(cert.order, 2u);
    EXPECT_EQ(cert.transition_levels.at(tid(3)), 2u);
    EXPECT_EQ(cert.transition_levels.at(tid(0)), 1u);
    EXPECT_TRUE(verify_ranking(v, cert));
}

TEST(Witness, ShortenDropsRedundantLaps) {
    const auto v = swap_cycle();
    const Path doubled{{tid(0), tid(1), tid(0), tid(1)}};
    const auto p = shorten_witness(v, doubled);
    EXPECT_EQ(p.length(), 2u);
    EXPECT_TRUE(is_cycle(v, p));
}

TEST(Witness, ShortenKeepsNecessarySteps) {
    // a -> b (+2,-1), b -> a (-1, +1): the only lap has value (1, 0).
    const auto v = Vass::create(2, {"a", "b"}, {{"a", "b", iv({2, -1})}, {"b", "a", iv({-1, 1})}});
    const auto p = shorten_witness(v, Path{{tid(0), tid(1)}});
    EXPECT_EQ(p.length(), 2u);
}

TEST(Witness, ExtractRequiresFullCoverage) {
    const auto v = vprog();
    EXPECT_THROW(extract_witness(v, {CycleSolution{Counts{{tid(1), 1}}}}), CoverageGap);
}

TEST(Witness, MinimizedWitnessStillVerifies) {
    AnalysisOptions opt;
    opt.minimize_witness = true;
    CorpusShape shape;
    for (const auto& v : random_corpus(51, 150, shape)) {
        const auto plain = analyze(v);
        if (plain.terminating()) continue;
        const auto small = analyze(v, opt);
        ASSERT_FALSE(small.terminating());
        EXPECT_TRUE(verify_witness(v, small.witness()));
        EXPECT_LE(small.witness().cycle.length(), plain.witness().cycle.length());
    }
}

TEST(AnalyzeProperty, VerdictsAreSelfCertifyingOnUnconstrainedVasses) {
    CorpusShape shape;
    shape.connected = false;
    shape.max_locations = 5;
    shape.max_transitions = 8;
    int terminating = 0, non_terminating = 0;
    for (const auto& v : random_corpus(52, 300, shape)) {
        const auto res = analyze(v);
        if (res.terminating()) {
            ++terminating;
            const auto check = verify_ranking(v, res.certificate());
            EXPECT_TRUE(check) << (check.rejection ? check.rejection->reason : "");
        } else {
            ++non_terminating;
            EXPECT_TRUE(verify_witness(v, res.witness()));
        }
    }
    EXPECT_GT(terminating, 30);
    EXPECT_GT(non_terminating, 30);
}

TEST(AnalyzeProperty, ModesAgreeLevelByLevel) {
    AnalysisOptions loop;
    loop.mode = Mode::Loop;
    for (const auto& v : random_corpus(53, 200)) {
        const auto a = analyze(v, loop);
        const auto b = analyze(v);
        EXPECT_EQ(a.terminating(), b.terminating());
        ASSERT_EQ(a.diagnostics.levels.size(), b.diagnostics.levels.size());
        for (std::size_t i = 0; i < a.diagnostics.levels.size(); ++i) {
            EXPECT_EQ(a.diagnostics.levels[i].scope, b.diagnostics.levels[i].scope);
            EXPECT_EQ(a.diagnostics.levels[i].decreasing, b.diagnostics.levels[i].decreasing);
            ASSERT_TRUE(b.diagnostics.levels[i].objectives);
            EXPECT_EQ(b.diagnostics.levels[i].objectives->first, b.diagnostics.levels[i].objectives->second);
        }
    }
}

TEST(AnalyzeProperty, DepthIsBoundedByDimension) {
    for (const auto& v : random_corpus(54, 200)) {
        const auto res = analyze(v);
        EXPECT_LE(res.diagnostics.recursion_depth, v.dim() + 1);
        if (res.terminating()) {
            EXPECT_LE(res.certificate().order, v.dim());
        }
    }
}

TEST(AnalyzeProperty, TighterCoefficientsStillVerify) {
    AnalysisOptions opt;
    opt.minimize_coefficients = true;
    for (const auto& v : random_corpus(55, 100)) {
        const auto res = analyze(v, opt);
        if (res.terminating()) {
            EXPECT_TRUE(verify_ranking(v, res.certificate()));
        }
    }
}
