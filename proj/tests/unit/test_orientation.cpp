#include "ppring/harness.hpp"
#include "ppring/orientation.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ppring;

namespace
{
    // Ring with colors 0,1,2,0,1,2,... (needs n divisible by 3), neighbors known, all pointing right.
    OrientConfiguration striped(int n)
    {
        OrientConfiguration c;
        c.agents.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            c.at(i).color = i % 3;
        for (int i = 0; i < n; ++i)
        {
            c.at(i).c1 = c.at(i - 1).color;
            c.at(i).c2 = c.at(i + 1).color;
            c.at(i).dir = c.at(i + 1).color;
        }
        return c;
    }

    OrientAgentState agent(int color, int c1, int c2, int dir, bool strong)
    {
        return OrientAgentState{color, c1, c2, dir, strong};
    }
}

TEST(Coloring, FourRing)
{
    for (std::uint64_t s = 0; s < 50; ++s)
    {
        const auto c = generate_two_hop_coloring(4, s);
        EXPECT_NE(c.at(0).color, c.at(2).color);
        EXPECT_NE(c.at(1).color, c.at(3).color);
    }
}

TEST(Coloring, FiveRingExhaustive)
{
    for (std::uint64_t s = 0; s < 50; ++s)
    {
        const auto c = generate_two_hop_coloring(5, s);
        for (int i = 0; i < 5; ++i)
            EXPECT_NE(c.at(i).color, c.at(i + 2).color);
    }
}

TEST(Coloring, Postconditions)
{
    for (const int n : {3, 4, 5, 6, 7, 8, 16, 31, 64, 101})
    {
        for (std::uint64_t s = 0; s < 20; ++s)
        {
            const auto c = generate_two_hop_coloring(n, s);
            EXPECT_EQ(c.xi, 5);
            EXPECT_TRUE(two_hop_colored(c));
            EXPECT_TRUE(neighbor_colors_known(c));
            for (const auto &a : c.agents)
            {
                EXPECT_NE(a.c1, a.c2);
                EXPECT_TRUE(a.dir == a.c1 || a.dir == a.c2);
                EXPECT_GE(a.color, 0);
                EXPECT_LT(a.color, 5);
            }
        }
    }
}

TEST(Coloring, RejectsTinyRings)
{
    EXPECT_THROW(generate_two_hop_coloring(2, 1), std::invalid_argument);
}

TEST(InteractOr, WeakMeetsStrong)
{
    const auto u = agent(0, 4, 1, 1, false);
    const auto v = agent(1, 0, 2, 0, true);
    const auto out = interact_or(u, v);
    EXPECT_EQ(out.u.dir, 4);
    EXPECT_TRUE(out.u.strong);
    EXPECT_FALSE(out.v.strong);
    EXPECT_EQ(out.v.dir, 0);
}

TEST(InteractOr, BothWeakResponderTurns)
{
    const auto u = agent(0, 4, 1, 1, false);
    const auto v = agent(1, 0, 2, 0, false);
    const auto out = interact_or(u, v);
    EXPECT_EQ(out.u.dir, 1);
    EXPECT_EQ(out.v.dir, 2);
    EXPECT_FALSE(out.u.strong);
    EXPECT_TRUE(out.v.strong);
}

TEST(InteractOr, FollowerDemotesStrong)
{
    const auto u = agent(0, 4, 1, 1, true);
    const auto v = agent(1, 0, 2, 2, true);
    const auto out = interact_or(u, v);
    EXPECT_FALSE(out.u.strong);
    EXPECT_EQ(out.u.dir, 1);
    EXPECT_EQ(out.v, v);
}

TEST(InteractOr, NeverTouchesColors)
{
    Rng rng(3);
    for (int k = 0; k < 20000; ++k)
    {
        auto draw = [&] {
            return agent(static_cast<int>(rng.below(5)), static_cast<int>(rng.below(5)),
                         static_cast<int>(rng.below(5)), static_cast<int>(rng.below(5)), rng.coin());
        };
        const auto u = draw();
        const auto v = draw();
        const auto out = interact_or(u, v);
        EXPECT_EQ(out.u.color, u.color);
        EXPECT_EQ(out.u.c1, u.c1);
        EXPECT_EQ(out.u.c2, u.c2);
        EXPECT_EQ(out.v.color, v.color);
        EXPECT_EQ(out.v.c1, v.c1);
        EXPECT_EQ(out.v.c2, v.c2);
    }
}

TEST(Oriented, Examples)
{
    auto c = striped(9);
    EXPECT_TRUE(is_oriented(c));
    EXPECT_EQ(segment_count(c), 1);

    c.at(4).dir = c.at(3).color;
    EXPECT_FALSE(is_oriented(c));
    EXPECT_EQ(segment_count(c), 2);

    for (int i = 0; i < 9; ++i)
        c.at(i).dir = c.at(i - 1).color;
    EXPECT_TRUE(is_oriented(c));
    EXPECT_EQ(segment_count(c), 1);
}

TEST(Oriented, AlternatingFourRing)
{
    OrientConfiguration c;
    c.agents.resize(4);
    const int colors[] = {0, 1, 2, 3};
    for (int i = 0; i < 4; ++i)
        c.at(i).color = colors[i];
    for (int i = 0; i < 4; ++i)
        c.at(i).dir = i % 2 == 0 ? c.at(i + 1).color : c.at(i - 1).color;
    EXPECT_FALSE(is_oriented(c));
    EXPECT_EQ(segment_count(c), 4);
}

TEST(Oriented, TrackerMatchesDirectCount)
{
    for (std::uint64_t s = 0; s < 30; ++s)
    {
        auto c = generate_two_hop_coloring(12, s);
        SegmentTracker tracker(c);
        ArcScheduler sch(s, 12);
        for (int k = 0; k < 2000; ++k)
        {
            const int arc = sch.next();
            const Arc e = arc_endpoints(arc, 12);
            const auto before = c;
            orient_step(c, arc);
            for (const int j : {e.initiator, e.responder})
            {
                if (c.at(j).dir == before.at(j).dir)
                    continue;
                const int now = c.at(j).dir;
                c.at(j).dir = before.at(j).dir;
                tracker.remove(c, j);
                c.at(j).dir = now;
                tracker.add(c, j);
            }
            ASSERT_EQ(tracker.count(), segment_count(c));
            ASSERT_EQ(tracker.oriented(), is_oriented(c));
        }
    }
}

TEST(ArcScheduler, CoversBothDirections)
{
    std::set<std::pair<int, int>> arcs;
    for (int a = 0; a < 10; ++a)
    {
        const Arc e = arc_endpoints(a, 5);
        arcs.insert({e.initiator, e.responder});
        EXPECT_EQ((e.initiator - e.responder + 5) % 5 == 1 || (e.responder - e.initiator + 5) % 5 == 1, true);
    }
    EXPECT_EQ(arcs.size(), 10U);
}

TEST(Orient, ConvergesMonotonically)
{
    for (const int n : {8, 16, 32})
    {
        for (std::uint64_t s = 0; s < 100; ++s)
        {
            const auto r = run_orient_trial(n, s, cutoff_steps(1e4, n), 0);
            EXPECT_TRUE(r.converged) << "n=" << n << " seed=" << s;
            EXPECT_EQ(r.max_segment_count_violation, 0);
        }
    }
}

TEST(Orient, OrientedRingIsFrozen)
{
    auto c = striped(12);
    ArcScheduler sch(4, 12);
    for (int k = 0; k < 100000; ++k)
    {
        orient_step(c, sch.next());
        ASSERT_TRUE(is_oriented(c));
    }
    for (int i = 0; i < 12; ++i)
        EXPECT_EQ(c.at(i).dir, c.at(i + 1).color);
}

TEST(Orient, StrayDirectionIsNeverRepaired)
{
    // dir naming no neighbor: the protocol only rewrites dir of agents that point at
    // each other, so this agent is stuck and the ring never orients
    auto c = striped(9);
    c.at(4).dir = 4;
    ArcScheduler sch(1, 9);
    for (int k = 0; k < 100000; ++k)
        orient_step(c, sch.next());
    EXPECT_EQ(c.at(4).dir, 4);
    EXPECT_FALSE(is_oriented(c));
}

TEST(Orient, AmnesiacStartLearnsNeighbors)
{
    for (std::uint64_t s = 0; s < 20; ++s)
    {
        const auto r = run_orient_trial(16, s, cutoff_steps(1e4, 16), 1000, true);
        EXPECT_TRUE(r.converged) << s;
    }
}

TEST(Orient, AmnesiacAgentWaitsForBothNeighbors)
{
    // v knows only u, so it cannot turn away from u yet; the flags still swap
    const auto u = agent(0, 4, 1, 1, false);
    const auto v = agent(1, 0, kUnknownColor, 0, false);
    const auto out = interact_or(u, v);
    EXPECT_EQ(out.v.dir, 0);
    EXPECT_TRUE(out.v.strong);
    const auto again = interact_or(out.u, out.v);
    EXPECT_EQ(again.u.dir, 4);
}

TEST(Orient, MemorizationKeepsTwoMostRecent)
{
    OrientAgentState a{0, kUnknownColor, kUnknownColor, 2, false};
    observe_color(a, 2);
    EXPECT_EQ(a.c1, 2);
    EXPECT_EQ(a.c2, kUnknownColor);
    observe_color(a, 4);
    EXPECT_EQ(a.c1, 4);
    EXPECT_EQ(a.c2, 2);
    observe_color(a, 4);
    EXPECT_EQ(a.c1, 4);
    EXPECT_EQ(a.c2, 2);
    observe_color(a, 2);
    EXPECT_EQ(a.c1, 2);
    EXPECT_EQ(a.c2, 4);
}
