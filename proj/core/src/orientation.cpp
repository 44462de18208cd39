#include "ppring/orientation.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace ppring
{
    namespace
    {
        // The unique remembered neighbor color other than `avoid`; keeps `fallback`
        // while the agent does not know its other neighbor yet.
        int other_neighbor(const OrientAgentState &a, int avoid, int fallback) noexcept
        {
            const bool first = a.c1 != avoid && a.c1 != kUnknownColor;
            const bool second = a.c2 != avoid && a.c2 != kUnknownColor;
            if (first && !second)
                return a.c1;
            if (second && !first)
                return a.c2;
            if (first && a.c1 == a.c2)
                return a.c1;
            return fallback;
        }
    }

    OrientConfiguration generate_two_hop_coloring(int n, std::uint64_t seed, bool amnesiac)
    {
        if (n < 3)
            throw std::invalid_argument("ring orientation needs n >= 3, got " + std::to_string(n));

        Rng rng(seed);
        OrientConfiguration config;
        config.xi = kOrientColors;
        config.agents.resize(static_cast<std::size_t>(n));
        std::vector<bool> assigned(static_cast<std::size_t>(n), false);

        for (int i = 0; i < n; ++i)
        {
            std::array<bool, kOrientColors> banned{};
            for (const int j : {config.wrap(i - 2), config.wrap(i + 2)})
            {
                if (j != i && assigned[static_cast<std::size_t>(j)])
                    banned[static_cast<std::size_t>(config.at(j).color)] = true;
            }
            std::vector<int> allowed;
            for (int c = 0; c < kOrientColors; ++c)
            {
                if (!banned[static_cast<std::size_t>(c)])
                    allowed.push_back(c);
            }
            config.at(i).color = allowed[rng.below(allowed.size())];
            assigned[static_cast<std::size_t>(i)] = true;
        }

        for (int i = 0; i < n; ++i)
        {
            auto &a = config.at(i);
            a.c1 = config.at(i - 1).color;
            a.c2 = config.at(i + 1).color;
            a.dir = rng.coin() ? a.c1 : a.c2;
            a.strong = rng.coin();
            if (amnesiac)
            {
                a.c1 = kUnknownColor;
                a.c2 = kUnknownColor;
            }
        }
        return config;
    }

    void interact_or_in_place(OrientAgentState &u, OrientAgentState &v)
    {
        if (u.dir == v.color && v.dir == u.color)
        {
            if (!u.strong && v.strong)
            {
                u.dir = other_neighbor(u, v.color, u.dir);
                u.strong = true;
                v.strong = false;
            }
            else
            {
                v.dir = other_neighbor(v, u.color, v.dir);
                u.strong = false;
                v.strong = true;
            }
        }
        else if (u.dir == v.color)
        {
            u.strong = false;
        }
        else if (v.dir == u.color)
        {
            v.strong = false;
        }
    }

    OrientPair interact_or(const OrientAgentState &u, const OrientAgentState &v)
    {
        OrientPair out{u, v};
        interact_or_in_place(out.u, out.v);
        return out;
    }

    void observe_color(OrientAgentState &agent, int color) noexcept
    {
        if (agent.c1 != color)
        {
            agent.c2 = agent.c1;
            agent.c1 = color;
        }
    }

    Arc arc_endpoints(int arc, int n) noexcept
    {
        if (arc < n)
            return {arc, arc + 1 == n ? 0 : arc + 1};
        const int i = arc - n;
        return {i + 1 == n ? 0 : i + 1, i};
    }

    void orient_step(OrientConfiguration &config, int arc, bool memorize)
    {
        const Arc e = arc_endpoints(arc, config.size());
        auto &u = config.at(e.initiator);
        auto &v = config.at(e.responder);
        if (memorize)
        {
            const int uc = u.color;
            observe_color(u, v.color);
            observe_color(v, uc);
        }
        interact_or_in_place(u, v);
    }

    bool two_hop_colored(const OrientConfiguration &config) noexcept
    {
        for (int i = 0; i < config.size(); ++i)
        {
            if (config.at(i).color == config.at(i + 2).color)
                return false;
        }
        return true;
    }

    bool neighbor_colors_known(const OrientConfiguration &config) noexcept
    {
        for (int i = 0; i < config.size(); ++i)
        {
            const auto &a = config.at(i);
            const int left = config.at(i - 1).color;
            const int right = config.at(i + 1).color;
            if (!((a.c1 == left && a.c2 == right) || (a.c1 == right && a.c2 == left)))
                return false;
        }
        return true;
    }

    bool points_right(const OrientConfiguration &config, int i) noexcept
    {
        return config.at(i).dir == config.at(i + 1).color;
    }

    bool points_left(const OrientConfiguration &config, int i) noexcept
    {
        return config.at(i).dir == config.at(i - 1).color;
    }

    bool is_oriented(const OrientConfiguration &config) noexcept
    {
        bool all_right = true;
        bool all_left = true;
        for (int i = 0; i < config.size(); ++i)
        {
            all_right = all_right && points_right(config, i);
            all_left = all_left && points_left(config, i);
        }
        return all_right || all_left;
    }

    namespace
    {
        // Number of maximal cyclic runs of true values in edge[0..n).
        template <typename EdgeFn>
        int cyclic_runs(int n, EdgeFn edge)
        {
            int runs = 0;
            bool all = true;
            for (int i = 0; i < n; ++i)
            {
                const bool here = edge(i);
                all = all && here;
                if (here && !edge((i + n - 1) % n))
                    ++runs;
            }
            return all ? 1 : runs;
        }
    }

    int segment_count(const OrientConfiguration &config) noexcept
    {
        const int n = config.size();
        // edge i joins u_i and u_{i+1}
        const int right = cyclic_runs(n, [&](int i) { return points_right(config, i); });
        const int left = cyclic_runs(n, [&](int i) { return points_left(config, (i + 1) % n); });
        return right + left;
    }
}
