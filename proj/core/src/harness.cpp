#include "ppring/harness.hpp"

#include "ppring/analysis.hpp"
#include "ppring/lottery.hpp"
#include "ppring/rng.hpp"
#include "ppring/scheduler.hpp"
#include "ppring/simulation.hpp"
#include "ppring/transition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace ppring
{
    std::string to_string(Protocol protocol)
    {
        switch (protocol)
        {
        case Protocol::PPL:
            return "PPL";
        case Protocol::POR:
            return "POR";
        case Protocol::Lottery:
            return "Lottery";
        }
        return "?";
    }

    Protocol parse_protocol(const std::string &name)
    {
        if (name == "PPL" || name == "ppl")
            return Protocol::PPL;
        if (name == "POR" || name == "por")
            return Protocol::POR;
        if (name == "Lottery" || name == "lottery")
            return Protocol::Lottery;
        throw std::invalid_argument("unknown protocol '" + name + "' (expected PPL, POR or Lottery)");
    }

    void ExperimentSpec::validate() const
    {
        if (trials_per_n < 1)
            throw std::invalid_argument("trials_per_n must be at least 1");
        if (!(max_steps_multiplier > 0.0))
            throw std::invalid_argument("max_steps_multiplier must be positive");
        if (n_values.empty())
            throw std::invalid_argument("no n values given");
        for (const auto &name : instrument)
        {
            if (!kKnownInstruments.contains(name))
                throw std::invalid_argument("unknown instrument '" + name + "'");
        }
        for (const int n : n_values)
        {
            if (protocol == Protocol::PPL)
                (void)make_params(n, kappa_max_override);
            else if (protocol == Protocol::POR && n < 3)
                throw std::invalid_argument("POR needs n >= 3");
            else if (protocol == Protocol::Lottery && (n < 1 || n > 40))
                throw std::invalid_argument("Lottery uses n as k and needs 1 <= k <= 40");
        }
    }

    std::uint64_t cutoff_steps(double multiplier, int n)
    {
        const double nn = static_cast<double>(n);
        const double steps = std::floor(multiplier * nn * nn * std::log2(nn));
        return steps < 1.0 ? 1 : static_cast<std::uint64_t>(steps);
    }

    std::uint64_t trial_seed(std::uint64_t base_seed, int n, int trial)
    {
        return derive_seed(base_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
    }

    namespace
    {
        // Scheduler and configuration draws come from independent streams of one trial seed.
        std::uint64_t scheduler_seed(std::uint64_t seed) { return derive_seed(seed, 0x5c4ed); }

        TrialRecord run_ppl_trial(const ExperimentSpec &spec, int n, std::uint64_t seed)
        {
            const ProtocolParams params = make_params(n, spec.kappa_max_override);
            const std::uint64_t cutoff = cutoff_steps(spec.max_steps_multiplier, n);
            TrialRecord rec{Protocol::PPL, n, params.psi, params.kappa_max, seed, cutoff, false, 0, 0};

            Configuration config = random_configuration(params, seed);
            Scheduler scheduler(scheduler_seed(seed), n);

            if (spec.instrument.empty())
            {
                const RunResult res = run(std::move(config), scheduler, cutoff, in_S_PL);
                rec.steps = res.stopped ? res.steps : cutoff;
                rec.converged = res.stopped;
                rec.final_leader_count = leader_count(res.config);
                return rec;
            }

            const bool check_range = spec.instrument.contains("in_range");
            if (spec.instrument.contains("trajectory"))
            {
                // The audit drives its own copy of the run with the same seeds.
                rec.violations += audit_token_trajectories(config, scheduler_seed(seed), cutoff).violations;
            }
            std::uint64_t steps = 0;
            bool stopped = in_S_PL(config);
            while (!stopped && steps < cutoff)
            {
                const std::uint64_t chunk = std::min<std::uint64_t>(static_cast<std::uint64_t>(n), cutoff - steps);
                for (std::uint64_t k = 0; k < chunk; ++k)
                {
                    const int i = scheduler.next();
                    step_in_place(config, i);
                    if (check_range && !(in_range(config.at(i), params) && in_range(config.at(i + 1), params)))
                        ++rec.violations;
                }
                steps += chunk;
                stopped = in_S_PL(config);
            }
            rec.steps = stopped ? steps : cutoff;
            rec.converged = stopped;
            rec.final_leader_count = leader_count(config);
            return rec;
        }

        TrialRecord run_por_trial(const ExperimentSpec &spec, int n, std::uint64_t seed)
        {
            const std::uint64_t cutoff = cutoff_steps(spec.max_steps_multiplier, n);
            const OrientRecord o = run_orient_trial(n, seed, cutoff, 0);
            TrialRecord rec{Protocol::POR, n, 0, 0, seed, o.converged ? o.steps_to_oriented : cutoff, o.converged, 0, 0};
            if (spec.instrument.contains("monotone") && o.max_segment_count_violation > 0)
                ++rec.violations;
            return rec;
        }

        TrialRecord run_lottery_trial(int k, std::uint64_t seed)
        {
            // one Upper-bound experiment: 4k 2^k flips, success iff at most 8k wins
            const std::uint64_t flips = 4ULL * static_cast<std::uint64_t>(k) << k;
            const LotteryOutcome out = play_lottery(k, flips, seed);
            return TrialRecord{Protocol::Lottery, k, 0, 0, seed, flips,
                               out.rounds_won <= 8ULL * static_cast<std::uint64_t>(k), 0, 0};
        }
    }

    TrialRecord run_trial(const ExperimentSpec &spec, int n, int trial)
    {
        const std::uint64_t seed = trial_seed(spec.base_seed, n, trial);
        switch (spec.protocol)
        {
        case Protocol::PPL:
            return run_ppl_trial(spec, n, seed);
        case Protocol::POR:
            return run_por_trial(spec, n, seed);
        case Protocol::Lottery:
            return run_lottery_trial(n, seed);
        }
        throw std::logic_error("unreachable protocol");
    }

    void parallel_for(int count, int workers, const std::function<void(int)> &job)
    {
        if (workers <= 0)
            workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
        workers = std::min(workers, count);
        if (workers <= 1)
        {
            for (int i = 0; i < count; ++i)
                job(i);
            return;
        }

        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
        {
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++)
                {
                    try
                    {
                        job(i);
                    }
                    catch (...)
                    {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        }
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    std::vector<TrialRecord> run_convergence_sweep(const ExperimentSpec &spec)
    {
        spec.validate();
        const int per_n = spec.trials_per_n;
        const int total = per_n * static_cast<int>(spec.n_values.size());
        std::vector<TrialRecord> records(static_cast<std::size_t>(total));
        parallel_for(total, spec.workers, [&](int job) {
            const int n = spec.n_values[static_cast<std::size_t>(job / per_n)];
            records[static_cast<std::size_t>(job)] = run_trial(spec, n, job % per_n);
        });
        return records;
    }

    void export_csv(const std::vector<TrialRecord> &records, std::ostream &out)
    {
        out << kCsvHeader << '\n';
        for (const auto &r : records)
        {
            out << to_string(r.protocol) << ',' << r.n << ',' << r.psi << ',' << r.kappa_max << ',' << r.seed << ','
                << r.steps << ',' << (r.converged ? 1 : 0) << ',' << r.final_leader_count << ',' << r.violations
                << '\n';
        }
    }

    void export_csv(const std::vector<TrialRecord> &records, const std::filesystem::path &path)
    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        export_csv(records, out);
    }

    std::string describe(const Violation &v)
    {
        return "seed " + std::to_string(v.seed) + " step " + std::to_string(v.step) + ": " + v.predicate;
    }

    // ---------------------------------------------------------------- closure

    namespace
    {
        struct ClosureTrial
        {
            bool rejected = false;
            std::uint64_t checks = 0;
            std::optional<Violation> violation;
        };

        ClosureTrial ppl_closure_trial(const Configuration &start, std::uint64_t seed, std::uint64_t steps)
        {
            ClosureTrial out;
            if (!in_S_PL(start))
            {
                out.rejected = true;
                return out;
            }
            const auto leader = unique_leader(start);
            Configuration config = start;
            Scheduler scheduler(scheduler_seed(seed), config.size());
            const auto interval = static_cast<std::uint64_t>(config.size());
            for (std::uint64_t done = 0; done < steps;)
            {
                const std::uint64_t chunk = std::min(interval, steps - done);
                for (std::uint64_t k = 0; k < chunk; ++k)
                    step_in_place(config, scheduler.next());
                done += chunk;
                ++out.checks;
                if (!in_S_PL(config))
                {
                    out.violation = Violation{seed, done, "in_S_PL"};
                    break;
                }
                if (unique_leader(config) != leader)
                {
                    out.violation = Violation{seed, done, "leader index changed"};
                    break;
                }
            }
            return out;
        }

        OrientConfiguration oriented_ring(int n, std::uint64_t seed)
        {
            OrientConfiguration config = generate_two_hop_coloring(n, seed);
            Rng rng(derive_seed(seed, 0x0e1e));
            const bool clockwise = rng.coin();
            for (int i = 0; i < n; ++i)
                config.at(i).dir = config.at(clockwise ? i + 1 : i - 1).color;
            return config;
        }

        ClosureTrial por_closure_trial(int n, std::uint64_t seed, std::uint64_t steps)
        {
            ClosureTrial out;
            OrientConfiguration config = oriented_ring(n, seed);
            if (!is_oriented(config))
            {
                out.rejected = true;
                return out;
            }
            ArcScheduler scheduler(scheduler_seed(seed), n);
            for (std::uint64_t s = 1; s <= steps; ++s)
            {
                const Arc e = arc_endpoints(scheduler.next(), n);
                auto &u = config.at(e.initiator);
                auto &v = config.at(e.responder);
                const int du = u.dir;
                const int dv = v.dir;
                interact_or_in_place(u, v);
                ++out.checks;
                if (u.dir != du || v.dir != dv)
                {
                    out.violation = Violation{seed, s, "dir changed after orientation"};
                    break;
                }
            }
            return out;
        }

        void merge(ClosureReport &report, const ClosureTrial &t)
        {
            report.rejected += t.rejected ? 1 : 0;
            report.checks += t.checks;
            if (t.violation)
                report.violations.push_back(*t.violation);
        }
    }

    ClosureReport run_closure_suite(Protocol protocol, int n, int trials, std::uint64_t seed, std::uint64_t steps,
                                    int workers)
    {
        if (protocol == Protocol::Lottery)
            throw std::invalid_argument("closure suite is defined for PPL and POR only");
        if (trials < 1)
            throw std::invalid_argument("trials must be at least 1");

        ClosureReport report{protocol, n, trials, 0, steps, 0, {}};
        std::vector<ClosureTrial> results(static_cast<std::size_t>(trials));
        std::optional<ProtocolParams> params;
        if (protocol == Protocol::PPL)
            params = make_params(n);
        else if (n < 3)
            throw std::invalid_argument("POR needs n >= 3");

        parallel_for(trials, workers, [&](int t) {
            const std::uint64_t s = trial_seed(seed, n, t);
            results[static_cast<std::size_t>(t)] = protocol == Protocol::PPL
                                                       ? ppl_closure_trial(construct_S_PL(*params, s), s, steps)
                                                       : por_closure_trial(n, s, steps);
        });
        for (const auto &t : results)
            merge(report, t);
        return report;
    }

    ClosureReport run_closure_from(const Configuration &start, std::uint64_t seed, std::uint64_t steps)
    {
        ClosureReport report{Protocol::PPL, start.size(), 1, 0, steps, 0, {}};
        merge(report, ppl_closure_trial(start, seed, steps));
        return report;
    }

    // ------------------------------------------------------------ elimination

    std::uint64_t EliminationReport::median_steps() const
    {
        if (steps.empty())
            return 0;
        std::vector<std::uint64_t> sorted = steps;
        std::sort(sorted.begin(), sorted.end());
        return sorted[sorted.size() / 2];
    }

    Configuration multi_leader_configuration(const ProtocolParams &params, int leaders, std::uint64_t seed)
    {
        if (leaders < 1 || leaders > params.n)
            throw std::invalid_argument("initial leader count must lie in [1, n]");
        Configuration config = construct_S_PL(params, seed);
        for (int j = 0; j < leaders; ++j)
        {
            auto &a = config.at(static_cast<long long>(j) * params.n / leaders);
            a.leader = true;
            a.shield = true;
            a.bullet = Bullet::None;
            a.signal_b = false;
            a.signal_r = 0;
            a.clock = 0;
        }
        return config;
    }

    namespace
    {
        struct EliminationTrial
        {
            bool converged = false;
            std::uint64_t steps = 0;
            std::optional<Violation> violation;
        };

        EliminationTrial elimination_trial(const ProtocolParams &params, int leaders, std::uint64_t seed,
                                           std::uint64_t max_steps)
        {
            EliminationTrial out;
            Configuration config = multi_leader_configuration(params, leaders, seed);
            if (!in_C_PB(config))
            {
                out.violation = Violation{seed, 0, "start not in C_PB"};
                return out;
            }
            int count = leader_count(config);
            Scheduler scheduler(scheduler_seed(seed), params.n);
            const int n = params.n;
            while (count != 1 && out.steps < max_steps)
            {
                const int i = scheduler.next();
                auto &l = config.agents[static_cast<std::size_t>(i)];
                auto &r = config.agents[static_cast<std::size_t>(i + 1 == n ? 0 : i + 1)];
                const int before = (l.leader ? 1 : 0) + (r.leader ? 1 : 0);
                interact_ppl_in_place(l, r, config.params);
                count += (l.leader ? 1 : 0) + (r.leader ? 1 : 0) - before;
                ++out.steps;
                if (count == 0)
                {
                    out.violation = Violation{seed, out.steps, "leader_count = 0"};
                    return out;
                }
            }
            out.converged = count == 1;
            return out;
        }
    }

    EliminationReport run_elimination_suite(int n, int initial_leaders, int trials, std::uint64_t seed,
                                            std::uint64_t max_steps, int workers)
    {
        const ProtocolParams params = make_params(n);
        if (initial_leaders < 1 || initial_leaders > n)
            throw std::invalid_argument("initial_leaders must lie in [1, n]");
        if (trials < 1)
            throw std::invalid_argument("trials must be at least 1");
        if (max_steps == 0)
            max_steps = cutoff_steps(1e4, n);

        std::vector<EliminationTrial> results(static_cast<std::size_t>(trials));
        parallel_for(trials, workers, [&](int t) {
            const std::uint64_t s = trial_seed(seed, n * 1000 + initial_leaders, t);
            results[static_cast<std::size_t>(t)] = elimination_trial(params, initial_leaders, s, max_steps);
        });

        EliminationReport report{n, initial_leaders, trials, 0, {}, {}};
        for (const auto &t : results)
        {
            report.converged += t.converged ? 1 : 0;
            report.steps.push_back(t.steps);
            if (t.violation)
                report.violations.push_back(*t.violation);
        }
        return report;
    }

    // ---------------------------------------------------------- token audit

    namespace
    {
        struct Shadow
        {
            bool tracked = false;
            int border = 0;
            int moves = 0;
        };

        bool window_consistent(const Configuration &config, int border, TokenColor color)
        {
            const ProtocolParams &p = config.params;
            const int base = token_base(color, p);
            for (int j = 0; j < p.two_psi(); ++j)
            {
                const auto &a = config.at(border + j);
                if (a.last || a.dist != (base + j) % p.two_psi())
                    return false;
            }
            return true;
        }

        class Auditor
        {
        public:
            explicit Auditor(const ProtocolParams &p)
                : bound_(2 * p.psi * p.psi - 2 * p.psi + 1),
                  shadows_{std::vector<Shadow>(static_cast<std::size_t>(p.n)),
                           std::vector<Shadow>(static_cast<std::size_t>(p.n))}
            {
            }

            void apply(const Configuration &config, int li, int ri, TokenColor color, const TokenTrace &t,
                       TrajectoryAudit &audit)
            {
                auto &sh = shadows_[color == TokenColor::Black ? 0 : 1];
                Shadow &l = sh[static_cast<std::size_t>(li)];
                Shadow &r = sh[static_cast<std::size_t>(ri)];
                if (t.born)
                {
                    finish(l, audit);
                    l = Shadow{true, li, 0};
                    ++audit.tracked;
                }
                if (t.collided)
                    finish(l, audit);
                if (t.move == TokenTrace::Move::Right)
                {
                    finish(r, audit);
                    r = l;
                    l = Shadow{};
                    count_move(r, audit);
                }
                else if (t.move == TokenTrace::Move::Left)
                {
                    finish(l, audit);
                    l = r;
                    r = Shadow{};
                    count_move(l, audit);
                }
                if (t.swept_l)
                    finish(l, audit);
                if (t.swept_r)
                    finish(r, audit);
                (void)config;
            }

            // A birth only counts when its window is consistent once the interaction is over.
            void settle_birth(const Configuration &config, int li, TokenColor color, TrajectoryAudit &audit)
            {
                auto &sh = shadows_[color == TokenColor::Black ? 0 : 1];
                Shadow &l = sh[static_cast<std::size_t>(li)];
                if (l.tracked && l.moves == 0 && !window_consistent(config, l.border, color))
                {
                    l = Shadow{};
                    --audit.tracked;
                }
            }

            void recheck(const Configuration &config)
            {
                for (int c = 0; c < 2; ++c)
                {
                    const TokenColor color = c == 0 ? TokenColor::Black : TokenColor::White;
                    for (auto &s : shadows_[static_cast<std::size_t>(c)])
                    {
                        if (s.tracked && !window_consistent(config, s.border, color))
                            s = Shadow{};
                    }
                }
            }

            [[nodiscard]] int bound() const noexcept { return bound_; }

        private:
            void count_move(Shadow &s, TrajectoryAudit &audit)
            {
                if (!s.tracked)
                    return;
                ++s.moves;
                audit.max_moves = std::max(audit.max_moves, s.moves);
                if (s.moves == bound_ + 1)
                    ++audit.violations;
            }

            static void finish(Shadow &s, TrajectoryAudit &audit)
            {
                if (s.tracked)
                    ++audit.completed;
                s = Shadow{};
            }

            int bound_;
            std::vector<Shadow> shadows_[2];
        };
    }

    TrajectoryAudit audit_token_trajectories(Configuration config, std::uint64_t seed, std::uint64_t steps)
    {
        const ProtocolParams params = config.params;
        const int n = config.size();
        Auditor auditor(params);
        TrajectoryAudit audit;
        audit.bound = auditor.bound();
        Scheduler scheduler(seed, n);

        for (std::uint64_t s = 0; s < steps; ++s)
        {
            const int li = scheduler.next();
            const int ri = li + 1 == n ? 0 : li + 1;
            auto &l = config.agents[static_cast<std::size_t>(li)];
            auto &r = config.agents[static_cast<std::size_t>(ri)];
            const int ld = l.dist;
            const int rd = r.dist;
            const bool ll = l.last;
            const bool rl = r.last;

            TokenTrace black;
            TokenTrace white;
            interact_ppl_in_place(l, r, params, &black, &white);
            auditor.apply(config, li, ri, TokenColor::Black, black, audit);
            auditor.apply(config, li, ri, TokenColor::White, white, audit);

            if (l.dist != ld || r.dist != rd || l.last != ll || r.last != rl)
                auditor.recheck(config);
            if (black.born)
                auditor.settle_birth(config, li, TokenColor::Black, audit);
            if (white.born)
                auditor.settle_birth(config, li, TokenColor::White, audit);
        }
        audit.steps = steps;
        return audit;
    }

    // ------------------------------------------------------------ orientation

    namespace
    {
        bool right_edge(const OrientConfiguration &c, int i) { return points_right(c, i); }
        bool left_edge(const OrientConfiguration &c, int i) { return points_left(c, c.wrap(i + 1)); }
    }

    SegmentTracker::SegmentTracker(const OrientConfiguration &config) : n_(config.size())
    {
        for (int i = 0; i < n_; ++i)
        {
            right_edges_ += right_edge(config, i) ? 1 : 0;
            left_edges_ += left_edge(config, i) ? 1 : 0;
            right_starts_ += right_edge(config, i) && !right_edge(config, i - 1) ? 1 : 0;
            left_starts_ += left_edge(config, i) && !left_edge(config, i - 1) ? 1 : 0;
        }
    }

    // Agent j owns right edge j and left edge j - 1; the run starts those edges can
    // affect are right j, j + 1 and left j - 1, j.
    void SegmentTracker::remove(const OrientConfiguration &c, int j)
    {
        right_edges_ -= right_edge(c, j) ? 1 : 0;
        left_edges_ -= left_edge(c, j - 1) ? 1 : 0;
        for (const int e : {j, j + 1})
            right_starts_ -= right_edge(c, e) && !right_edge(c, e - 1) ? 1 : 0;
        for (const int e : {j - 1, j})
            left_starts_ -= left_edge(c, e) && !left_edge(c, e - 1) ? 1 : 0;
    }

    void SegmentTracker::add(const OrientConfiguration &c, int j)
    {
        right_edges_ += right_edge(c, j) ? 1 : 0;
        left_edges_ += left_edge(c, j - 1) ? 1 : 0;
        for (const int e : {j, j + 1})
            right_starts_ += right_edge(c, e) && !right_edge(c, e - 1) ? 1 : 0;
        for (const int e : {j - 1, j})
            left_starts_ += left_edge(c, e) && !left_edge(c, e - 1) ? 1 : 0;
    }

    int SegmentTracker::count() const noexcept
    {
        const int right = right_edges_ == n_ ? 1 : right_starts_;
        const int left = left_edges_ == n_ ? 1 : left_starts_;
        return right + left;
    }

    bool SegmentTracker::oriented() const noexcept
    {
        return right_edges_ == n_ || left_edges_ == n_;
    }

    OrientRecord run_orient_trial(int n, std::uint64_t seed, std::uint64_t max_steps, std::uint64_t post_steps,
                                  bool amnesiac)
    {
        OrientConfiguration config = generate_two_hop_coloring(n, seed, amnesiac);
        ArcScheduler scheduler(scheduler_seed(seed), n);
        SegmentTracker tracker(config);
        OrientRecord rec{n, seed, 0, tracker.oriented(), 0, 0};

        // Returns the index of the agent whose dir changed, or -1.
        auto interact = [&](int arc) {
            const Arc e = arc_endpoints(arc, n);
            auto &u = config.at(e.initiator);
            auto &v = config.at(e.responder);
            const int du = u.dir;
            const int dv = v.dir;
            orient_step(config, arc, amnesiac);
            int changed = -1;
            for (const auto &[agent, old] : {std::pair{e.initiator, du}, std::pair{e.responder, dv}})
            {
                auto &a = config.at(agent);
                if (a.dir == old)
                    continue;
                const int now = a.dir;
                a.dir = old;
                tracker.remove(config, agent);
                a.dir = now;
                tracker.add(config, agent);
                changed = agent;
            }
            return changed;
        };

        while (!rec.converged && rec.steps_to_oriented < max_steps)
        {
            const int before = tracker.count();
            interact(scheduler.next());
            ++rec.steps_to_oriented;
            rec.max_segment_count_violation = std::max(rec.max_segment_count_violation, tracker.count() - before);
            rec.converged = tracker.oriented();
        }
        if (!rec.converged)
            return rec;
        for (std::uint64_t s = 0; s < post_steps; ++s)
        {
            if (interact(scheduler.next()) >= 0)
                ++rec.post_dir_changes;
        }
        return rec;
    }

    void export_orient_csv(const std::vector<OrientRecord> &records, std::ostream &out)
    {
        out << kOrientCsvHeader << '\n';
        for (const auto &r : records)
        {
            out << r.seed << ',';
            if (r.converged)
                out << r.steps_to_oriented;
            else
                out << "cutoff";
            out << ',' << r.max_segment_count_violation << '\n';
        }
    }
}
