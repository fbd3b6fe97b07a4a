#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace vassrank;
using namespace fixtures;

TEST(UpdateMatrix, VprogColumnsAreTheUpdates) {
    const auto v = vprog();
    const auto d = build_update_matrix(v);
    ASSERT_EQ(d.entries.rows(), 2u);
    ASSERT_EQ(d.entries.cols(), 3u);
    EXPECT_EQ(d.entries.column(0), iv({-1, 1}));
    EXPECT_EQ(d.entries.column(1), iv({0, -1}));
    EXPECT_EQ(d.entries.column(2), iv({0, 0}));
    EXPECT_EQ(d.at(1, tid(1)), -1);
}

TEST(UpdateMatrix, NoTransitionsGivesZeroColumns) {
    const auto v = Vass::create(2, {"a", "b"}, {});
    const auto d = build_update_matrix(v);
    EXPECT_EQ(d.entries.rows(), 2u);
    EXPECT_EQ(d.entries.cols(), 0u);
}

TEST(UpdateMatrix, SingleSelfLoop) {
    const auto d = build_update_matrix(self_loop({-1}));
    ASSERT_EQ(d.entries.rows(), 1u);
    ASSERT_EQ(d.entries.cols(), 1u);
    EXPECT_EQ(d.entries(0, 0), -1);
}

TEST(FlowMatrix, VprogOrientation) {
    const auto v = vprog();
    const auto f = build_flow_matrix(v);
    const auto l1 = loc(v, "l1"), l2 = loc(v, "l2");
    EXPECT_EQ(f.at(l1, tid(0)), -1);
    EXPECT_EQ(f.at(l2, tid(0)), 1);
    EXPECT_EQ(f.at(l1, tid(1)), 0);
    EXPECT_EQ(f.at(l2, tid(1)), 0);
    EXPECT_EQ(f.at(l1, tid(2)), 1);
    EXPECT_EQ(f.at(l2, tid(2)), -1);
}

TEST(FlowMatrix, TwoLocationCycleHasOnePlusAndOneMinusPerColumn) {
    const auto f = build_flow_matrix(swap_cycle());
    for (std::size_t c = 0; c < 2; ++c) {
        int plus = 0, minus = 0;
        for (std::size_t r = 0; r < 2; ++r) {
            if (f.entries(r, c) == 1) ++plus;
            if (f.entries(r, c) == -1) ++minus;
        }
        EXPECT_EQ(plus, 1);
        EXPECT_EQ(minus, 1);
    }
}

TEST(FlowMatrix, ColumnsSumToZeroOnRandomVasses) {
    CorpusShape shape;
    shape.connected = false;
    for (const auto& v : random_corpus(11, 100, shape)) {
        const auto f = build_flow_matrix(v);
        for (std::size_t c = 0; c < f.entries.cols(); ++c) {
            Integer s = 0;
            for (std::size_t r = 0; r < f.entries.rows(); ++r) s += f.entries(r, c);
            EXPECT_EQ(s, 0);
        }
    }
}

TEST(PathValue, SumsTheUpdates) {
    const auto v = vprog();
    EXPECT_EQ(path_value(v, Path{{tid(0), tid(1), tid(2)}}), iv({-1, 0}));
    EXPECT_EQ(path_value(v, Path{}), iv({0, 0}));
    EXPECT_EQ(path_value(swap_cycle(), Path{{tid(0), tid(1)}}), iv({0, 0}));
}

TEST(PathValue, RejectsDisconnectedSteps) {
    const auto v = vprog();
    EXPECT_THROW(path_value(v, Path{{tid(0), tid(0)}}), InvalidPath);
    EXPECT_THROW(path_value(v, Path{{tid(7)}}), InvalidPath);
}

namespace {

Path random_walk(const Vass& v, LocId from, std::size_t len, std::mt19937_64& rng) {
    Path p;
    LocId at = from;
    for (std::size_t k = 0; k < len; ++k) {
        std::vector<TransId> out;
        for (const auto& t : v.transitions()) {
            if (t.source == at) out.push_back(t.id);
        }
        if (out.empty()) break;
        const auto t = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        p.steps.push_back(t);
        at = v.transition(t).target;
    }
    return p;
}

}  // namespace

TEST(PathValue, AdditiveUnderConcatenation) {
    std::mt19937_64 rng(5);
    CorpusShape shape;
    for (const auto& v : random_corpus(12, 60, shape)) {
        const auto p1 = random_walk(v, v.locations().front(), 5, rng);
        const LocId mid = p1.empty() ? v.locations().front() : v.transition(p1.steps.back()).target;
        const auto p2 = random_walk(v, mid, 5, rng);
        Path joined = p1;
        joined.steps.insert(joined.steps.end(), p2.steps.begin(), p2.steps.end());
        auto expected = path_value(v, p1);
        add_into(expected, path_value(v, p2));
        EXPECT_EQ(path_value(v, joined), expected);
    }
}

TEST(MultiCycle, ValueEqualsUpdateMatrixTimesCounts) {
    std::mt19937_64 rng(6);
    CorpusShape shape;
    for (const auto& v : random_corpus(13, 60, shape)) {
        // Closed walks from a random location of a strongly connected VASS:
        // follow a random walk and return along a cycle through every edge.
        const auto p = random_walk(v, v.locations().front(), 6, rng);
        const LocId end = p.empty() ? v.locations().front() : v.transition(p.steps.back()).target;
        // Close the walk with a shortest path back (BFS over transitions).
        std::map<LocId, TransId> via;
        std::vector<LocId> queue{end};
        std::set<LocId> seen{end};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            for (const auto& t : v.transitions()) {
                if (t.source == queue[i] && seen.insert(t.target).second) {
                    via[t.target] = t.id;
                    queue.push_back(t.target);
                }
            }
        }
        Path back;
        for (LocId at = v.locations().front(); at != end; at = v.transition(via.at(at)).source) {
            back.steps.insert(back.steps.begin(), via.at(at));
        }
        Path cycle = p;
        cycle.steps.insert(cycle.steps.end(), back.steps.begin(), back.steps.end());
        const auto counts = count_steps(cycle);
        const auto mc = multicycle_from_counts(v, counts);
        IntVector total(v.dim(), Integer(0));
        for (const auto& c : mc.cycles) add_into(total, path_value(v, c));
        EXPECT_EQ(total, build_update_matrix(v).entries.multiply(counts_vector(v, counts)));
    }
}

TEST(Vass, RejectsBadInput) {
    EXPECT_THROW(Vass::create(0, {"a"}, {}), InvalidVass);
    EXPECT_THROW(Vass::create(1, {"a", "a"}, {}), InvalidVass);
    EXPECT_THROW(Vass::create(1, {"a"}, {{"a", "b", iv({1})}}), InvalidVass);
    EXPECT_THROW(Vass::create(2, {"a"}, {{"a", "a", iv({1})}}), InvalidVass);
}

TEST(Vass, DuplicateTransitionsGetDistinctIds) {
    const auto v = Vass::create(1, {"a"}, {{"a", "a", iv({-1})}, {"a", "a", iv({-1})}});
    ASSERT_EQ(v.transitions().size(), 2u);
    EXPECT_EQ(v.transitions()[0].id, tid(0));
    EXPECT_EQ(v.transitions()[1].id, tid(1));
}

TEST(Vass, SubVassKeepsIdsAndNames) {
    const auto v = vcsys();
    const auto sub = v.sub_vass(std::vector<LocId>{loc(v, "l_ff")}, std::vector<TransId>{tid(1)});
    EXPECT_EQ(sub.locations().size(), 1u);
    EXPECT_TRUE(sub.has_transition(tid(1)));
    EXPECT_FALSE(sub.has_transition(tid(0)));
    EXPECT_EQ(sub.name(sub.locations().front()), "l_ff");
    EXPECT_THROW(v.sub_vass(std::vector<LocId>{loc(v, "l_ff")}, std::vector<TransId>{tid(0)}), InvalidVass);
}

TEST(Vass, HugeUpdatesStayExact) {
    const Integer big("123456789012345678901234567890");
    const auto v = Vass::create(1, {"a"}, {{"a", "a", IntVector{big}}, {"a", "a", IntVector{Integer(-big)}}});
    EXPECT_EQ(path_value(v, Path{{tid(0), tid(1), tid(0)}}), IntVector{big});
}
