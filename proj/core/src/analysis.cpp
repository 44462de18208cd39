#include "ppring/analysis.hpp"

#include "ppring/rng.hpp"
#include "ppring/transition.hpp"

#include <algorithm>

namespace ppring
{
    LeaderDistances nearest_leader_distances(const Configuration &config, int i)
    {
        LeaderDistances d;
        const int n = config.size();
        for (int j = 0; j < n; ++j)
        {
            if (!d.left && config.at(i - j).leader)
                d.left = j;
            if (!d.right && config.at(i + j).leader)
                d.right = j;
        }
        return d;
    }

    std::vector<Segment> segments(const Configuration &config)
    {
        const int n = config.size();
        std::vector<int> borders;
        for (int i = 0; i < n; ++i)
        {
            if (is_border(config.agents[static_cast<std::size_t>(i)], config.params))
                borders.push_back(i);
        }
        if (borders.empty())
            throw NoBorderError();

        std::vector<Segment> out;
        out.reserve(borders.size());
        for (std::size_t k = 0; k < borders.size(); ++k)
        {
            const int start = borders[k];
            const int next = borders[(k + 1) % borders.size()];
            const int length = next > start ? next - start : next - start + n;
            out.push_back({start, length});
        }
        return out;
    }

    std::uint64_t segment_id(const Configuration &config, const Segment &s)
    {
        if (s.length > 63)
            throw std::out_of_range("segment of length " + std::to_string(s.length) + " has no 64-bit ID");
        std::uint64_t id = 0;
        for (int j = 0; j < s.length; ++j)
        {
            if (config.at(s.start + j).b)
                id |= std::uint64_t{1} << j;
        }
        return id;
    }

    bool is_perfect(const Configuration &config)
    {
        const auto &p = config.params;
        const int n = config.size();
        for (int i = 0; i < n; ++i)
        {
            const auto &a = config.at(i);
            const int expected = a.leader ? 0 : (config.at(i - 1).dist + 1) % p.two_psi();
            if (a.dist != expected)
                return false;
        }

        std::vector<Segment> segs;
        try
        {
            segs = segments(config);
        }
        catch (const NoBorderError &)
        {
            return false;
        }

        const std::uint64_t modulus = std::uint64_t{1} << p.psi;
        for (std::size_t k = 0; k < segs.size(); ++k)
        {
            const auto &s = segs[k];
            if (config.at(s.start).leader || config.at(s.start + s.length).leader)
                continue;
            const auto &prev = segs[(k + segs.size() - 1) % segs.size()];
            if (segment_id(config, s) != (segment_id(config, prev) + 1) % modulus)
                return false;
        }
        return true;
    }

    bool token_is_valid(const Configuration &config, int i, TokenColor color)
    {
        const auto &agent = config.at(i);
        if (!agent.token(color))
            throw PreconditionError("agent " + std::to_string(i) + " holds no token of that color");
        return !invalid_token(agent, color, config.params);
    }

    int leader_count(const Configuration &config) noexcept
    {
        return static_cast<int>(std::count_if(config.agents.begin(), config.agents.end(),
                                              [](const AgentState &a) { return a.leader; }));
    }

    std::optional<int> unique_leader(const Configuration &config) noexcept
    {
        std::optional<int> found;
        for (int i = 0; i < config.size(); ++i)
        {
            if (config.agents[static_cast<std::size_t>(i)].leader)
            {
                if (found)
                    return std::nullopt;
                found = i;
            }
        }
        return found;
    }

    bool is_peaceful(const Configuration &config, int i)
    {
        if (config.at(i).bullet != Bullet::Live)
            throw PreconditionError("agent " + std::to_string(i) + " carries no live bullet");
        const auto d = nearest_leader_distances(config, i).left;
        if (!d)
            return false;
        if (!config.at(i - *d).shield)
            return false;
        for (int j = 0; j <= *d; ++j)
        {
            if (config.at(i - j).signal_b)
                return false;
        }
        return true;
    }

    bool in_C_PB(const Configuration &config)
    {
        const int n = config.size();
        int first_leader = -1;
        for (int i = 0; i < n && first_leader < 0; ++i)
        {
            if (config.agents[static_cast<std::size_t>(i)].leader)
                first_leader = i;
        }
        if (first_leader < 0)
            return false;

        // One sweep clockwise from a leader; `clear` tracks whether the nearest left
        // leader is shielded with no bullet-absence signal up to the current agent.
        bool clear = false;
        for (int j = 0; j < n; ++j)
        {
            const auto &a = config.at(first_leader + j);
            if (a.leader)
                clear = a.shield && !a.signal_b;
            else
                clear = clear && !a.signal_b;
            if (a.bullet == Bullet::Live && !clear)
                return false;
        }
        return true;
    }

    namespace
    {
        // C_DL body for a configuration whose unique leader is known.
        bool dist_last_consistent(const Configuration &config, int leader)
        {
            const auto &p = config.params;
            const int last_start = p.psi * (p.zeta - 1);
            for (int i = 0; i < config.size(); ++i)
            {
                const auto &a = config.at(leader + i);
                if (a.dist != i % p.two_psi())
                    return false;
                if (a.last != (i >= last_start))
                    return false;
            }
            return true;
        }

        // Position of the first zero bit of S_seg (relative to the leader), psi if none.
        int first_zero_bit(const Configuration &config, int leader, int seg)
        {
            const int psi = config.params.psi;
            for (int q = 0; q < psi; ++q)
            {
                if (!config.at(leader + seg * psi + q).b)
                    return q;
            }
            return psi;
        }

        bool correct_relative(const Configuration &config, int leader, int i, TokenColor color)
        {
            const auto &p = config.params;
            const int psi = p.psi;
            const int n = config.size();
            const Token &token = *config.at(i).token(color);
            const int k = config.wrap(static_cast<long long>(i) - leader);
            if (k >= psi * (p.zeta - 1))
                return false;

            const int target = k + token.offset;
            if (target < 1 || target > n - 1)
                return false;
            int seg = 0;
            int round = 0;
            if (token.offset > 0)
            {
                seg = target / psi - 1;
                round = target - (seg + 1) * psi;
            }
            else
            {
                seg = target / psi;
                round = target % psi - 1;
                if (round < 0)
                    return false;
            }
            if (seg < 0 || seg > p.zeta - 2)
                return false;
            if ((seg % 2 == 0) != (color == TokenColor::Black))
                return false;

            const int j = first_zero_bit(config, leader, seg);
            const bool carry_in = round <= j;
            const bool carry_out = round < j;
            const bool digit = config.at(leader + seg * psi + round).b != carry_in;
            return token.carry_bit == carry_out && token.value_bit == digit;
        }
    }

    bool in_C_DL(const Configuration &config)
    {
        const auto leader = unique_leader(config);
        if (!leader)
            return false;
        return in_C_PB(config) && dist_last_consistent(config, *leader);
    }

    bool token_is_correct(const Configuration &config, int i, TokenColor color)
    {
        if (!config.at(i).token(color))
            throw PreconditionError("agent " + std::to_string(i) + " holds no token of that color");
        if (!in_C_DL(config))
            throw PreconditionError("token correctness is defined only in C_DL");
        if (!token_is_valid(config, i, color))
            throw PreconditionError("token at agent " + std::to_string(i) + " is invalid");
        return correct_relative(config, *unique_leader(config), config.wrap(i), color);
    }

    bool in_S_PL(const Configuration &config)
    {
        if (!in_C_DL(config))
            return false;
        const auto &p = config.params;
        const int leader = *unique_leader(config);

        for (int i = 0; i < config.size(); ++i)
        {
            const auto &a = config.agents[static_cast<std::size_t>(i)];
            for (const auto color : {TokenColor::Black, TokenColor::White})
            {
                if (!a.token(color))
                    continue;
                if (invalid_token(a, color, p) || !correct_relative(config, leader, i, color))
                    return false;
            }
        }

        const std::uint64_t modulus = std::uint64_t{1} << p.psi;
        for (int s = 0; s + 2 < p.zeta; ++s)
        {
            const auto here = segment_id(config, {config.wrap(leader + s * p.psi), p.psi});
            const auto next = segment_id(config, {config.wrap(leader + (s + 1) * p.psi), p.psi});
            if (next != (here + 1) % modulus)
                return false;
        }
        return true;
    }

    Configuration construct_S_PL(const ProtocolParams &params, std::uint64_t seed)
    {
        Configuration config = blank_configuration(params);
        Rng rng(seed);
        const int psi = params.psi;
        const std::uint64_t modulus = std::uint64_t{1} << psi;
        const std::uint64_t first_id = rng.below(modulus);
        const int last_start = psi * (params.zeta - 1);

        for (int i = 0; i < params.n; ++i)
        {
            auto &a = config.agents[static_cast<std::size_t>(i)];
            a.leader = i == 0;
            a.shield = i == 0;
            a.dist = i % params.two_psi();
            a.last = i >= last_start;
            if (i >= last_start)
            {
                a.b = rng.coin();
            }
            else
            {
                const std::uint64_t id = (first_id + static_cast<std::uint64_t>(i / psi)) % modulus;
                a.b = ((id >> (i % psi)) & 1U) != 0;
            }
        }
        return config;
    }

    std::optional<std::size_t> completion_length(std::span<const int> trace, std::span<const int> pattern) noexcept
    {
        std::size_t matched = 0;
        if (pattern.empty())
            return 0;
        for (std::size_t t = 0; t < trace.size(); ++t)
        {
            if (trace[t] == pattern[matched] && ++matched == pattern.size())
                return t + 1;
        }
        return std::nullopt;
    }

    bool sequence_occurs(std::span<const int> trace, std::span<const int> pattern) noexcept
    {
        return completion_length(trace, pattern).has_value();
    }

    std::vector<int> seq_right(int i, int len, int n)
    {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(std::max(0, len)));
        for (int j = 0; j < len; ++j)
            out.push_back(((i + j) % n + n) % n);
        return out;
    }

    std::vector<int> seq_left(int i, int len, int n)
    {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(std::max(0, len)));
        for (int j = 1; j <= len; ++j)
            out.push_back(((i - j) % n + n) % n);
        return out;
    }

    Configuration rotated(const Configuration &config, int origin)
    {
        Configuration out{config.params, {}};
        out.agents.reserve(config.agents.size());
        for (int j = 0; j < config.size(); ++j)
            out.agents.push_back(config.at(static_cast<long long>(origin) + j));
        return out;
    }
}
