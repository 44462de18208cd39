#pragma once

#include "ppring/configuration.hpp"
#include "ppring/orientation.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ppring
{
    enum class Protocol : std::uint8_t
    {
        PPL,
        POR,
        Lottery,
    };

    std::string to_string(Protocol protocol);
    Protocol parse_protocol(const std::string &name);

    /// Per-step invariant checks understood by the sweep.
    ///   "in_range"   PPL: both interacting agents stay inside their declared ranges
    ///   "trajectory" PPL: token trajectory length audit
    ///   "monotone"   POR: segment_count never increases
    inline const std::set<std::string> kKnownInstruments = {"in_range", "trajectory", "monotone"};

    struct ExperimentSpec
    {
        Protocol protocol = Protocol::PPL;
        std::vector<int> n_values;
        int trials_per_n = 1;
        std::uint64_t base_seed = 0;
        double max_steps_multiplier = 1e4; // cutoff = multiplier * n^2 * log2 n
        std::optional<int> kappa_max_override;
        std::set<std::string> instrument;
        int workers = 1; // 0 selects the hardware concurrency

        void validate() const;
    };

    struct TrialRecord
    {
        Protocol protocol = Protocol::PPL;
        int n = 0;
        int psi = 0;       // 0 when not applicable (POR, Lottery)
        int kappa_max = 0; // 0 when not applicable
        std::uint64_t seed = 0;
        std::uint64_t steps = 0; // equals the cutoff when not converged
        bool converged = false;
        int final_leader_count = 0; // PPL only
        std::uint64_t violations = 0;

        bool operator==(const TrialRecord &) const = default;
    };

    /// floor(multiplier * n^2 * log2 n), at least 1.
    std::uint64_t cutoff_steps(double multiplier, int n);

    std::uint64_t trial_seed(std::uint64_t base_seed, int n, int trial);

    TrialRecord run_trial(const ExperimentSpec &spec, int n, int trial);

    /// Records in (n, trial) order regardless of worker count.
    std::vector<TrialRecord> run_convergence_sweep(const ExperimentSpec &spec);

    inline constexpr const char *kCsvHeader = "protocol,n,psi,kappa_max,seed,steps,converged,final_leader_count,violations";

    void export_csv(const std::vector<TrialRecord> &records, std::ostream &out);
    void export_csv(const std::vector<TrialRecord> &records, const std::filesystem::path &path);

    /// Runs job(0) .. job(count - 1) on up to `workers` threads.
    void parallel_for(int count, int workers, const std::function<void(int)> &job);

    struct Violation
    {
        std::uint64_t seed = 0;
        std::uint64_t step = 0;
        std::string predicate;
    };

    std::string describe(const Violation &v);

    struct ClosureReport
    {
        Protocol protocol = Protocol::PPL;
        int n = 0;
        int trials = 0;
        int rejected = 0; // starts that failed the safe-set precheck
        std::uint64_t steps_per_trial = 0;
        std::uint64_t checks = 0;
        std::vector<Violation> violations;

        [[nodiscard]] bool ok() const noexcept { return violations.empty() && rejected == 0; }
    };

    inline constexpr std::uint64_t kClosureSteps = 100000;

    /// PPL: starts from construct_S_PL and checks in_S_PL and the leader index every n
    /// steps. POR: starts from an oriented ring and checks the dir vector every step.
    ClosureReport run_closure_suite(Protocol protocol, int n, int trials, std::uint64_t seed,
                                    std::uint64_t steps = kClosureSteps, int workers = 1);

    /// One PPL closure trial from a given start. A start outside S_PL is counted as
    /// rejected and not run.
    ClosureReport run_closure_from(const Configuration &start, std::uint64_t seed, std::uint64_t steps = kClosureSteps);

    struct EliminationReport
    {
        int n = 0;
        int initial_leaders = 0;
        int trials = 0;
        int converged = 0;
        std::vector<std::uint64_t> steps;
        std::vector<Violation> violations;

        [[nodiscard]] std::uint64_t median_steps() const;
        [[nodiscard]] bool ok() const noexcept { return violations.empty() && converged == trials; }
    };

    /// construct_S_PL with `leaders` evenly spaced shielded leaders (no bullets or signals).
    Configuration multi_leader_configuration(const ProtocolParams &params, int leaders, std::uint64_t seed);

    /// Runs each trial until exactly one leader remains; zero leaders is a violation.
    /// max_steps = 0 selects cutoff_steps(1e4, n).
    EliminationReport run_elimination_suite(int n, int initial_leaders, int trials, std::uint64_t seed,
                                            std::uint64_t max_steps = 0, int workers = 1);

    struct TrajectoryAudit
    {
        std::uint64_t steps = 0;
        std::uint64_t tracked = 0;   // tokens born at a border of a consistent window
        std::uint64_t completed = 0; // tracked tokens that disappeared while still tracked
        int max_moves = 0;
        int bound = 0; // 2 psi^2 - 2 psi + 1
        std::uint64_t violations = 0;
    };

    /// Counts moves of every token born at a border k whose window u_k .. u_{k+2psi-1}
    /// has consistent dist and last = 0; a token stops being tracked when its window
    /// turns inconsistent.
    TrajectoryAudit audit_token_trajectories(Configuration config, std::uint64_t seed, std::uint64_t steps);

    /// Incrementally maintained segment_count for a P_OR ring.
    class SegmentTracker
    {
    public:
        explicit SegmentTracker(const OrientConfiguration &config);

        /// Call with the agent's dir restored to its old value, then again after the write.
        void remove(const OrientConfiguration &config, int agent);
        void add(const OrientConfiguration &config, int agent);

        [[nodiscard]] int count() const noexcept;
        [[nodiscard]] bool oriented() const noexcept;

    private:
        int n_;
        int right_edges_ = 0;
        int left_edges_ = 0;
        int right_starts_ = 0;
        int left_starts_ = 0;
    };

    struct OrientRecord
    {
        int n = 0;
        std::uint64_t seed = 0;
        std::uint64_t steps_to_oriented = 0;
        bool converged = false;
        int max_segment_count_violation = 0; // largest one-step increase of segment_count
        std::uint64_t post_dir_changes = 0;  // dir writes after orientation
    };

    /// Random dir/strong over a valid coloring; runs to orientation with the segment
    /// count checked every step, then `post_steps` more steps watching dir.
    OrientRecord run_orient_trial(int n, std::uint64_t seed, std::uint64_t max_steps, std::uint64_t post_steps,
                                  bool amnesiac = false);

    inline constexpr const char *kOrientCsvHeader = "seed,steps_to_oriented,max_segment_count_violation";
    void export_orient_csv(const std::vector<OrientRecord> &records, std::ostream &out);
}
