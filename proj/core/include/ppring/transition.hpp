#pragma once

#include "ppring/params.hpp"
#include "ppring/state.hpp"

namespace ppring
{
    /// Successor states of one interaction: l is the initiator, r the responder.
    struct AgentPair
    {
        AgentState l;
        AgentState r;

        bool operator==(const AgentPair &) const = default;
    };

    /// What MoveToken did to one token color during a single interaction.
    /// Filled only by callers that instrument token trajectories.
    struct TokenTrace
    {
        enum class Move : unsigned char
        {
            None,
            Right, // token transferred l -> r (includes the reflection at a right target)
            Left,  // token transferred r -> l (includes the re-arm at a left target)
        };

        bool born = false;      // l generated a fresh token at its border
        bool collided = false;  // l's token destroyed because r holds one or is in the last segment
        Move move = Move::None;
        bool swept_l = false;   // l's token deleted by the final last/invalid sweep
        bool swept_r = false;
    };

    /// Full P_PL interaction: DetermineMode, the dist/last block, MoveToken for the
    /// black and white tokens, then EliminateLeaders, each observing earlier writes.
    AgentPair interact_ppl(const AgentState &l, const AgentState &r, const ProtocolParams &p);

    /// In-place form used by the step loop; optional traces record token movement.
    void interact_ppl_in_place(AgentState &l, AgentState &r, const ProtocolParams &p,
                               TokenTrace *black = nullptr, TokenTrace *white = nullptr);

    /// Resetting-signal, lottery hits, clock and mode update.
    AgentPair determine_mode(AgentState l, AgentState r, const ProtocolParams &p);

    /// tmp = 0 if r is a leader else l.dist + 1 (mod 2 psi); leader creation on a
    /// detected dist mismatch, dist copy in construction mode, then l.last.
    AgentPair create_leader_diststep(AgentState l, AgentState r, const ProtocolParams &p);

    /// Generation, movement, reflection and deletion of one token color.
    AgentPair move_token(AgentState l, AgentState r, TokenColor color, const ProtocolParams &p);

    /// Bullets, shields and bullet-absence signals.
    AgentPair eliminate_leaders(AgentState l, AgentState r);

    void determine_mode_in_place(AgentState &l, AgentState &r, const ProtocolParams &p);
    void create_leader_diststep_in_place(AgentState &l, AgentState &r, const ProtocolParams &p);
    void move_token_in_place(AgentState &l, AgentState &r, TokenColor color, const ProtocolParams &p,
                             TokenTrace *trace = nullptr);
    void eliminate_leaders_in_place(AgentState &l, AgentState &r);

    /// A token is invalid when it has left the trajectory its border would give it:
    /// a right-moving token must target an agent whose (dist + d) mod 2psi lies in
    /// [psi, 2psi-1]; a left-moving one, in [1, psi-1]. d is 0 for black, psi for white.
    /// Returns false when v holds no token of that color.
    [[nodiscard]] bool invalid_token(const AgentState &v, TokenColor color, const ProtocolParams &p) noexcept;
}
