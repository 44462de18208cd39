// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any failed.

#include "ppring/analysis.hpp"
#include "ppring/harness.hpp"
#include "ppring/lottery.hpp"
#include "ppring/rng.hpp"
#include "ppring/transition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace ppring;

namespace
{
    constexpr std::uint64_t kSeed = 20240601;
    constexpr int kWorkers = 0; // all cores

    int failures = 0;

    void report(int id, bool pass, const std::string &what, const std::string &detail, double seconds)
    {
        std::printf("%s criterion %d: %s [%s] (%.1fs)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(),
                    seconds);
        std::fflush(stdout);
        failures += pass ? 0 : 1;
    }

    template <typename F>
    void criterion(int id, const std::string &what, F body)
    {
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream detail;
        bool pass = false;
        try
        {
            pass = body(detail);
        }
        catch (const std::exception &e)
        {
            detail << "exception: " << e.what();
        }
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        report(id, pass, what, detail.str(), took.count());
    }

    bool leaderless_four_rings(std::ostream &out)
    {
        int cases = 0;
        int perfect = 0;
        for (int phase = 0; phase < 4; ++phase)
        {
            for (unsigned bits = 0; bits < 16; ++bits)
            {
                Configuration c = blank_configuration(make_params(4));
                for (int i = 0; i < 4; ++i)
                {
                    c.at(i).dist = (phase + i) % 4;
                    c.at(i).b = ((bits >> i) & 1U) != 0;
                }
                ++cases;
                perfect += is_perfect(c) ? 1 : 0;
            }
        }
        out << cases << " cases, " << perfect << " perfect";
        return cases == 64 && perfect == 0;
    }

    bool safe_set_closure(std::ostream &out)
    {
        bool ok = true;
        std::uint64_t checks = 0;
        for (const int n : {8, 16, 32})
        {
            const auto r = run_closure_suite(Protocol::PPL, n, 100, kSeed, kClosureSteps, kWorkers);
            checks += r.checks;
            for (const auto &v : r.violations)
                out << "n=" << n << " " << describe(v) << "; ";
            ok = ok && r.ok();
        }
        out << checks << " checks";
        return ok;
    }

    bool never_zero_leaders(std::ostream &out)
    {
        bool ok = true;
        for (const int k : {2, 4, 8})
        {
            const auto r = run_elimination_suite(32, k, 100, kSeed, 0, kWorkers);
            out << k << " leaders: " << r.converged << "/100 to one, median " << r.median_steps() << " steps, "
                << r.violations.size() << " violations; ";
            for (const auto &v : r.violations)
                out << describe(v) << "; ";
            ok = ok && r.ok();
        }
        return ok;
    }

    bool convergence(std::ostream &out)
    {
        ExperimentSpec spec;
        spec.n_values = {8, 16, 32, 64};
        spec.trials_per_n = 100;
        spec.base_seed = kSeed;
        spec.workers = kWorkers;
        const auto records = run_convergence_sweep(spec);

        bool all = true;
        double lo = 1e300;
        double hi = 0;
        for (const int n : spec.n_values)
        {
            std::vector<std::uint64_t> steps;
            int converged = 0;
            for (const auto &r : records)
            {
                if (r.n != n)
                    continue;
                steps.push_back(r.steps);
                converged += r.converged && r.final_leader_count == 1 ? 1 : 0;
            }
            std::sort(steps.begin(), steps.end());
            const double median = static_cast<double>(steps[steps.size() / 2]);
            const double ratio = median / (double(n) * n * std::log2(double(n)));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            all = all && converged == 100;
            out << "n=" << n << ": " << converged << "/100, median/(n^2 log n)=" << ratio << "; ";
        }
        out << "spread " << hi / lo;
        return all && hi / lo <= 10.0;
    }

    bool lottery_bounds(std::ostream &out)
    {
        const double limit = 1.0 / 16 + 0.03;
        const auto upper = estimate_bound(4, 1, LotteryBound::Upper, 10000, kSeed);
        const auto lower = estimate_bound(4, 1, LotteryBound::Lower, 10000, kSeed + 1);
        out << "upper fail " << upper.failure_rate << ", lower fail " << lower.failure_rate;
        bool ok = upper.failure_rate <= limit && lower.failure_rate <= limit;
        for (int k = 2; k <= 5; ++k)
        {
            const std::uint64_t rounds = 100000;
            const auto r = play_rounds(k, rounds, derive_seed(kSeed, static_cast<std::uint64_t>(k)));
            const double p = std::ldexp(1.0, -k);
            const double rate = static_cast<double>(r.rounds_won) / static_cast<double>(rounds);
            const double z = std::abs(rate - p) / std::sqrt(p * (1 - p) / static_cast<double>(rounds));
            out << "; k=" << k << " z=" << z;
            ok = ok && z <= 3.0;
        }
        return ok;
    }

    bool token_trajectories(std::ostream &out)
    {
        const auto p = make_params(16);
        std::uint64_t steps = 0;
        std::uint64_t tracked = 0;
        std::uint64_t completed = 0;
        std::uint64_t violations = 0;
        int max_moves = 0;
        int bound = 0;
        for (std::uint64_t s = 0; s < 10; ++s)
        {
            const auto seed = derive_seed(kSeed, s);
            const auto start = s == 0 ? construct_S_PL(p, seed) : random_configuration(p, seed);
            const auto a = audit_token_trajectories(start, seed, 100000);
            steps += a.steps;
            tracked += a.tracked;
            completed += a.completed;
            violations += a.violations;
            max_moves = std::max(max_moves, a.max_moves);
            bound = a.bound;
        }
        out << steps << " steps, " << tracked << " tokens tracked, " << completed << " finished, max moves "
            << max_moves << " of " << bound << ", " << violations << " violations";
        return steps >= 1000000 && violations == 0 && completed > 0;
    }

    bool orientation(std::ostream &out)
    {
        bool ok = true;
        for (const int n : {8, 16, 32, 64})
        {
            std::vector<OrientRecord> records(100);
            parallel_for(100, kWorkers, [&](int t) {
                records[static_cast<std::size_t>(t)] =
                    run_orient_trial(n, trial_seed(kSeed, n, t), cutoff_steps(1e4, n), kClosureSteps);
            });
            int converged = 0;
            int increases = 0;
            std::uint64_t changes = 0;
            for (const auto &r : records)
            {
                converged += r.converged ? 1 : 0;
                increases += r.max_segment_count_violation > 0 ? 1 : 0;
                changes += r.post_dir_changes;
            }
            out << "n=" << n << ": " << converged << "/100 oriented, " << increases << " non-monotone, " << changes
                << " dir changes after; ";
            ok = ok && converged == 100 && increases == 0 && changes == 0;
        }
        return ok;
    }

    bool composition(std::ostream &out)
    {
        Rng rng(kSeed);
        int mismatches = 0;
        const int pairs = 100000;
        for (int k = 0; k < pairs; ++k)
        {
            const auto p = make_params(k % 3 == 0 ? 8 : (k % 3 == 1 ? 16 : 64));
            const AgentState l = random_agent(p, rng);
            const AgentState r = random_agent(p, rng);
            auto s = determine_mode(l, r, p);
            s = create_leader_diststep(s.l, s.r, p);
            s = move_token(s.l, s.r, TokenColor::Black, p);
            s = move_token(s.l, s.r, TokenColor::White, p);
            s = eliminate_leaders(s.l, s.r);
            mismatches += interact_ppl(l, r, p) == s ? 0 : 1;
        }
        out << pairs << " pairs, " << mismatches << " mismatches";
        return mismatches == 0;
    }
}

int main()
{
    criterion(1, "leaderless dist-consistent rings at n=4 are never perfect", leaderless_four_rings);
    criterion(2, "safe set closed, leader fixed (n=8,16,32 x 100 seeds x 1e5 steps)", safe_set_closure);
    criterion(3, "elimination from peaceful multi-leader starts never reaches zero leaders", never_zero_leaders);
    criterion(4, "convergence from random configurations with n^2 log n scaling", convergence);
    criterion(5, "lottery failure rates and per-round win rates", lottery_bounds);
    criterion(6, "token trajectory length at n=16", token_trajectories);
    criterion(7, "ring orientation converges, monotone, frozen afterwards", orientation);
    criterion(8, "fused transition equals the chained sub-operations", composition);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
