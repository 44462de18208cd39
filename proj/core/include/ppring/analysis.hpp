#pragma once

#include "ppring/configuration.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppring
{
    /// The ring has no agent with dist in {0, psi}.
    class NoBorderError : public std::runtime_error
    {
    public:
        NoBorderError() : std::runtime_error("configuration has no border agent") {}
    };

    /// A predicate was asked about a token, bullet or configuration shape that is not there.
    class PreconditionError : public std::logic_error
    {
    public:
        explicit PreconditionError(const std::string &what) : std::logic_error(what) {}
    };

    /// Distances to the nearest leader on each side; nullopt stands for infinity.
    struct LeaderDistances
    {
        std::optional<int> left;
        std::optional<int> right;

        bool operator==(const LeaderDistances &) const = default;
    };

    LeaderDistances nearest_leader_distances(const Configuration &config, int i);

    /// Border agent `start` followed by length - 1 non-border agents (indices mod n).
    struct Segment
    {
        int start = 0;
        int length = 0;

        bool operator==(const Segment &) const = default;
    };

    /// Cyclic partition into border-to-border runs, ordered by start index.
    /// Throws NoBorderError when no agent is a border.
    std::vector<Segment> segments(const Configuration &config);

    /// sum_j b_{start+j} * 2^j, least significant bit at the border.
    std::uint64_t segment_id(const Configuration &config, const Segment &s);

    /// Every agent satisfies the dist recurrence and every segment the +1 ID chain
    /// (or is flanked by a leader).
    bool is_perfect(const Configuration &config);

    /// False when the token has left its trajectory. Throws PreconditionError if
    /// agent i holds no token of that color.
    bool token_is_valid(const Configuration &config, int i, TokenColor color);

    /// Digit/carry correctness of a valid token relative to the segment it increments.
    /// Requires config in C_DL and a valid token at i; tokens that are not working for
    /// any pair (S_k, S_{k+1}) are reported incorrect.
    bool token_is_correct(const Configuration &config, int i, TokenColor color);

    /// The live bullet at i cannot kill the last leader. Throws PreconditionError
    /// when agent i does not carry a live bullet.
    bool is_peaceful(const Configuration &config, int i);

    int leader_count(const Configuration &config) noexcept;

    /// Index of the unique leader, or nullopt when there are zero or several.
    std::optional<int> unique_leader(const Configuration &config) noexcept;

    bool in_C_PB(const Configuration &config);
    bool in_C_DL(const Configuration &config);
    bool in_S_PL(const Configuration &config);

    /// Canonical safe configuration: leader at u_0, consistent dist/last, segment IDs
    /// counting up from a seed-chosen iota(S_0), no tokens, bullets or signals.
    Configuration construct_S_PL(const ProtocolParams &params, std::uint64_t seed);

    /// `pattern` occurs in `trace` in order, not necessarily contiguously.
    bool sequence_occurs(std::span<const int> trace, std::span<const int> pattern) noexcept;

    /// Number of leading trace entries needed for `pattern` to occur, or nullopt.
    std::optional<std::size_t> completion_length(std::span<const int> trace, std::span<const int> pattern) noexcept;

    /// seq_R(i, len) = e_i, e_{i+1}, ..., e_{i+len-1} (indices mod n).
    std::vector<int> seq_right(int i, int len, int n);

    /// seq_L(i, len) = e_{i-1}, e_{i-2}, ..., e_{i-len} (indices mod n).
    std::vector<int> seq_left(int i, int len, int n);

    /// Configuration rotated so that agent `origin` becomes u_0.
    Configuration rotated(const Configuration &config, int origin);
}
