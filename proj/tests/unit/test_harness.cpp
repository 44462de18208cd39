#include "ppring/analysis.hpp"
#include "ppring/harness.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

using namespace ppring;

namespace
{
    int count_lines(const std::string &s)
    {
        int lines = 0;
        for (const char c : s)
            lines += c == '\n' ? 1 : 0;
        return lines;
    }
}

TEST(Sweep, PplAtEightAllConverge)
{
    ExperimentSpec spec;
    spec.n_values = {8};
    spec.trials_per_n = 50;
    spec.base_seed = 3;
    const auto records = run_convergence_sweep(spec);
    ASSERT_EQ(records.size(), 50U);
    for (const auto &r : records)
    {
        EXPECT_TRUE(r.converged);
        EXPECT_EQ(r.final_leader_count, 1);
        EXPECT_EQ(r.violations, 0U);
        EXPECT_LT(r.steps, cutoff_steps(1e4, 8));
        EXPECT_EQ(r.psi, 3);
        EXPECT_EQ(r.kappa_max, 96);
    }
}

TEST(Sweep, PorAtSixteenAllConverge)
{
    ExperimentSpec spec;
    spec.protocol = Protocol::POR;
    spec.n_values = {16};
    spec.trials_per_n = 50;
    spec.instrument = {"monotone"};
    for (const auto &r : run_convergence_sweep(spec))
    {
        EXPECT_TRUE(r.converged);
        EXPECT_EQ(r.violations, 0U);
    }
}

TEST(Sweep, Reproducible)
{
    ExperimentSpec spec;
    spec.n_values = {8, 16};
    spec.trials_per_n = 1;
    spec.base_seed = 77;
    EXPECT_EQ(run_convergence_sweep(spec), run_convergence_sweep(spec));
}

TEST(Sweep, WorkerCountDoesNotChangeOutput)
{
    ExperimentSpec spec;
    spec.n_values = {8, 16};
    spec.trials_per_n = 6;
    spec.workers = 1;
    const auto serial = run_convergence_sweep(spec);
    spec.workers = 4;
    EXPECT_EQ(run_convergence_sweep(spec), serial);
}

TEST(Sweep, InstrumentedRunMatchesPlainRun)
{
    ExperimentSpec spec;
    spec.n_values = {16};
    spec.trials_per_n = 5;
    const auto plain = run_convergence_sweep(spec);
    spec.instrument = {"in_range", "trajectory"};
    const auto checked = run_convergence_sweep(spec);
    ASSERT_EQ(plain.size(), checked.size());
    for (std::size_t i = 0; i < plain.size(); ++i)
    {
        EXPECT_EQ(plain[i].steps, checked[i].steps);
        EXPECT_EQ(checked[i].violations, 0U);
    }
}

TEST(Sweep, CutoffIsHonest)
{
    ExperimentSpec spec;
    spec.n_values = {32};
    spec.trials_per_n = 3;
    spec.max_steps_multiplier = 1e-3; // 5 steps: far too few
    for (const auto &r : run_convergence_sweep(spec))
    {
        EXPECT_FALSE(r.converged);
        EXPECT_EQ(r.steps, cutoff_steps(1e-3, 32));
    }
}

TEST(Sweep, LotteryProtocol)
{
    ExperimentSpec spec;
    spec.protocol = Protocol::Lottery;
    spec.n_values = {4};
    spec.trials_per_n = 200;
    int converged = 0;
    for (const auto &r : run_convergence_sweep(spec))
    {
        EXPECT_EQ(r.steps, 256U);
        converged += r.converged ? 1 : 0;
    }
    EXPECT_GE(converged, 180);
}

TEST(Sweep, SpecValidation)
{
    ExperimentSpec spec;
    spec.n_values = {8};
    spec.trials_per_n = 0;
    EXPECT_THROW(run_convergence_sweep(spec), std::invalid_argument);
    spec.trials_per_n = 1;
    spec.max_steps_multiplier = 0;
    EXPECT_THROW(run_convergence_sweep(spec), std::invalid_argument);
    spec.max_steps_multiplier = 1;
    spec.instrument = {"nonsense"};
    EXPECT_THROW(run_convergence_sweep(spec), std::invalid_argument);
    spec.instrument.clear();
    spec.kappa_max_override = 10;
    EXPECT_THROW(run_convergence_sweep(spec), InvalidParams);
}

TEST(Csv, HeaderPlusOneLinePerRecord)
{
    ExperimentSpec spec;
    spec.n_values = {8, 16};
    spec.trials_per_n = 3;
    const auto records = run_convergence_sweep(spec);
    std::ostringstream out;
    export_csv(records, out);
    const auto text = out.str();
    EXPECT_EQ(count_lines(text), 7);
    EXPECT_EQ(text.substr(0, text.find('\n')), "protocol,n,psi,kappa_max,seed,steps,converged,final_leader_count,violations");
    EXPECT_EQ(text.find("PPL,8,3,96,"), text.find('\n') + 1);
}

TEST(Csv, Orient)
{
    std::vector<OrientRecord> records(4);
    std::ostringstream out;
    export_orient_csv(records, out);
    EXPECT_EQ(count_lines(out.str()), 5);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "seed,steps_to_oriented,max_segment_count_violation");
}

TEST(Closure, PplSixteen)
{
    const auto report = run_closure_suite(Protocol::PPL, 16, 20, 5, 20000);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.rejected, 0);
    EXPECT_EQ(report.checks, 20U * 20000U / 16U);
}

TEST(Closure, PorSixteen)
{
    const auto report = run_closure_suite(Protocol::POR, 16, 20, 5, 20000);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.checks, 20U * 20000U);
}

TEST(Closure, CorruptedStartIsRejected)
{
    auto c = construct_S_PL(make_params(16), 1);
    c.at(6).dist = (c.at(6).dist + 3) % 8;
    const auto report = run_closure_from(c, 1, 1000);
    EXPECT_EQ(report.rejected, 1);
    EXPECT_TRUE(report.violations.empty());
    EXPECT_FALSE(report.ok());
}

TEST(Elimination, SingleLeaderReturnsImmediately)
{
    const auto report = run_elimination_suite(32, 1, 5, 1);
    EXPECT_TRUE(report.ok());
    for (const auto s : report.steps)
        EXPECT_EQ(s, 0U);
}

TEST(Elimination, StartsInCPB)
{
    for (const int k : {2, 4, 8, 32})
    {
        const auto c = multi_leader_configuration(make_params(32), k, 2);
        EXPECT_EQ(leader_count(c), k);
        EXPECT_TRUE(in_C_PB(c));
    }
}

TEST(Elimination, TwoAndEightLeaders)
{
    const auto two = run_elimination_suite(32, 2, 30, 9);
    const auto eight = run_elimination_suite(32, 8, 30, 9);
    EXPECT_TRUE(two.ok());
    EXPECT_TRUE(eight.ok());
    EXPECT_EQ(two.converged, 30);
    EXPECT_EQ(eight.converged, 30);
    EXPECT_GT(eight.median_steps(), two.median_steps());
}

TEST(Elimination, BadArguments)
{
    EXPECT_THROW(run_elimination_suite(8, 9, 1, 1), std::invalid_argument);
    EXPECT_THROW(run_elimination_suite(8, 0, 1, 1), std::invalid_argument);
}

TEST(TrajectoryAudit, SafeRunStaysWithinBound)
{
    const auto p = make_params(16);
    const auto audit = audit_token_trajectories(construct_S_PL(p, 3), 3, 200000);
    EXPECT_EQ(audit.bound, 2 * 16 - 8 + 1);
    EXPECT_EQ(audit.violations, 0U);
    EXPECT_GT(audit.tracked, 100U);
    EXPECT_GT(audit.completed, 100U);
    EXPECT_LE(audit.max_moves, audit.bound);
}

TEST(TrajectoryAudit, RandomStartsStayWithinBound)
{
    const auto p = make_params(16);
    for (std::uint64_t s = 0; s < 5; ++s)
    {
        const auto audit = audit_token_trajectories(random_configuration(p, s), s, 100000);
        EXPECT_EQ(audit.violations, 0U) << s;
        EXPECT_GT(audit.completed, 0U);
    }
}

TEST(ParallelFor, RunsEveryJobOnce)
{
    std::vector<int> hits(100, 0);
    parallel_for(100, 4, [&](int i) { ++hits[static_cast<std::size_t>(i)]; });
    for (const int h : hits)
        EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](int i) {
                     if (i == 7)
                         throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(Protocol, Names)
{
    EXPECT_EQ(parse_protocol("PPL"), Protocol::PPL);
    EXPECT_EQ(parse_protocol("por"), Protocol::POR);
    EXPECT_EQ(to_string(Protocol::Lottery), "Lottery");
    EXPECT_THROW(parse_protocol("raft"), std::invalid_argument);
}
