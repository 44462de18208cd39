#pragma once

#include "ppring/rng.hpp"

#include <cstdint>
#include <vector>

namespace ppring
{
    /// One P_OR agent on an undirected ring. color, c1 and c2 are inputs; dir names
    /// the color of the neighbor the agent points at.
    struct OrientAgentState
    {
        int color = 0;
        int c1 = 0;
        int c2 = 0;
        int dir = 0;
        bool strong = false;

        bool operator==(const OrientAgentState &) const = default;
    };

    inline constexpr int kOrientColors = 5;

    /// c1/c2 value of an agent that has not observed that neighbor yet (amnesiac start).
    inline constexpr int kUnknownColor = -1;

    struct OrientConfiguration
    {
        int xi = kOrientColors;
        std::vector<OrientAgentState> agents;

        [[nodiscard]] int size() const noexcept { return static_cast<int>(agents.size()); }
        [[nodiscard]] int wrap(long long i) const noexcept
        {
            const long long n = size();
            return static_cast<int>(((i % n) + n) % n);
        }
        [[nodiscard]] OrientAgentState &at(long long i) noexcept { return agents[static_cast<std::size_t>(wrap(i))]; }
        [[nodiscard]] const OrientAgentState &at(long long i) const noexcept
        {
            return agents[static_cast<std::size_t>(wrap(i))];
        }

        bool operator==(const OrientConfiguration &) const = default;
    };

    struct OrientPair
    {
        OrientAgentState u;
        OrientAgentState v;

        bool operator==(const OrientPair &) const = default;
    };

    /// Greedy two-hop coloring with xi = 5 colors, c1/c2 set to the actual neighbor
    /// colors, dir drawn from {c1, c2} and strong drawn uniformly. With `amnesiac`,
    /// c1 = c2 = kUnknownColor and agents must learn their neighbors.
    OrientConfiguration generate_two_hop_coloring(int n, std::uint64_t seed, bool amnesiac = false);

    /// One P_OR interaction: u is the initiator, v the responder.
    OrientPair interact_or(const OrientAgentState &u, const OrientAgentState &v);
    void interact_or_in_place(OrientAgentState &u, OrientAgentState &v);

    /// Neighbor memorization: remember the two most recently observed distinct colors.
    void observe_color(OrientAgentState &agent, int color) noexcept;

    /// Ordered arc a in [0, 2n): a < n is (u_a, u_{a+1}); otherwise (u_{a-n+1}, u_{a-n}).
    struct Arc
    {
        int initiator = 0;
        int responder = 0;
    };
    Arc arc_endpoints(int arc, int n) noexcept;

    /// Uniform scheduler over the 2n ordered arcs of an undirected ring.
    class ArcScheduler
    {
    public:
        ArcScheduler(std::uint64_t seed, int n) : rng_(seed), n_(n) {}
        int next() { return static_cast<int>(rng_.below(2 * static_cast<std::uint64_t>(n_))); }

    private:
        Rng rng_;
        int n_;
    };

    /// One interaction on `arc`; with `memorize`, both agents first observe each other's color.
    void orient_step(OrientConfiguration &config, int arc, bool memorize = false);

    bool two_hop_colored(const OrientConfiguration &config) noexcept;
    bool neighbor_colors_known(const OrientConfiguration &config) noexcept;

    /// Every agent points clockwise, or every agent points counter-clockwise.
    bool is_oriented(const OrientConfiguration &config) noexcept;

    /// Maximal right segments plus maximal left segments; 1 iff oriented.
    int segment_count(const OrientConfiguration &config) noexcept;

    bool points_right(const OrientConfiguration &config, int i) noexcept;
    bool points_left(const OrientConfiguration &config, int i) noexcept;
}
