// ppring: command-line front end for the P_PL / P_OR simulators.
//
// Exit status: 0 when no invariant was violated and every trial converged,
// 1 when a check failed, 2 on bad arguments or unreadable input.

#include "ppring/analysis.hpp"
#include "ppring/harness.hpp"
#include "ppring/lottery.hpp"
#include "ppring/orientation.hpp"
#include "ppring/snapshot.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace ppring;

namespace
{
    constexpr int kFailed = 1;
    constexpr int kBadInput = 2;

    struct SweepArgs
    {
        std::string protocol = "PPL";
        std::vector<int> n = {8, 16, 32, 64};
        int trials = 100;
        std::uint64_t seed = 1;
        double multiplier = 1e4;
        std::optional<int> kappa_max;
        int workers = 0;
        std::vector<std::string> instrument;
        std::string out;
    };

    int do_sweep(const SweepArgs &a)
    {
        ExperimentSpec spec;
        spec.protocol = parse_protocol(a.protocol);
        spec.n_values = a.n;
        spec.trials_per_n = a.trials;
        spec.base_seed = a.seed;
        spec.max_steps_multiplier = a.multiplier;
        spec.kappa_max_override = a.kappa_max;
        spec.instrument.insert(a.instrument.begin(), a.instrument.end());
        spec.workers = a.workers;

        const auto records = run_convergence_sweep(spec);
        if (a.out.empty() || a.out == "-")
            export_csv(records, std::cout);
        else
            export_csv(records, a.out);

        bool ok = true;
        for (const auto &r : records)
            ok = ok && r.converged && r.violations == 0;
        return ok ? 0 : kFailed;
    }

    struct ClosureArgs
    {
        std::string protocol = "PPL";
        int n = 16;
        int trials = 100;
        std::uint64_t seed = 1;
        std::uint64_t steps = kClosureSteps;
        int workers = 0;
        std::string from;
    };

    int do_closure(const ClosureArgs &a)
    {
        const ClosureReport report = a.from.empty()
                                         ? run_closure_suite(parse_protocol(a.protocol), a.n, a.trials, a.seed,
                                                             a.steps, a.workers)
                                         : run_closure_from(read_config(a.from), a.seed, a.steps);
        std::cout << "protocol " << to_string(report.protocol) << " n=" << report.n << " trials=" << report.trials
                  << " steps/trial=" << report.steps_per_trial << " checks=" << report.checks
                  << " rejected=" << report.rejected << " violations=" << report.violations.size() << '\n';
        if (report.rejected > 0)
            std::cout << "start configuration rejected: not in S_PL\n";
        for (const auto &v : report.violations)
            std::cout << "violation: " << describe(v) << '\n';
        return report.ok() ? 0 : kFailed;
    }

    struct EliminateArgs
    {
        int n = 32;
        std::vector<int> leaders = {2, 4, 8};
        int trials = 100;
        std::uint64_t seed = 1;
        std::uint64_t max_steps = 0;
        int workers = 0;
    };

    int do_eliminate(const EliminateArgs &a)
    {
        bool ok = true;
        std::cout << "n,initial_leaders,trials,converged,median_steps,violations\n";
        for (const int k : a.leaders)
        {
            const auto report = run_elimination_suite(a.n, k, a.trials, a.seed, a.max_steps, a.workers);
            std::cout << report.n << ',' << report.initial_leaders << ',' << report.trials << ','
                      << report.converged << ',' << report.median_steps() << ',' << report.violations.size()
                      << '\n';
            for (const auto &v : report.violations)
                std::cerr << "violation: " << describe(v) << '\n';
            ok = ok && report.ok();
        }
        return ok ? 0 : kFailed;
    }

    struct OrientArgs
    {
        int n = 16;
        int seeds = 100;
        std::uint64_t seed = 1;
        std::uint64_t max_steps = 0;
        std::uint64_t post_steps = kClosureSteps;
        bool amnesiac = false;
        int workers = 0;
        std::string out;
    };

    int do_orient(const OrientArgs &a)
    {
        const std::uint64_t cutoff = a.max_steps > 0 ? a.max_steps : cutoff_steps(1e4, a.n);
        std::vector<OrientRecord> records(static_cast<std::size_t>(a.seeds));
        parallel_for(a.seeds, a.workers, [&](int t) {
            records[static_cast<std::size_t>(t)] =
                run_orient_trial(a.n, trial_seed(a.seed, a.n, t), cutoff, a.post_steps, a.amnesiac);
        });

        if (a.out.empty() || a.out == "-")
        {
            export_orient_csv(records, std::cout);
        }
        else
        {
            std::ofstream out(a.out);
            if (!out)
                throw std::runtime_error("cannot open " + a.out + " for writing");
            export_orient_csv(records, out);
        }

        bool ok = true;
        for (const auto &r : records)
        {
            ok = ok && r.converged && r.max_segment_count_violation == 0 && r.post_dir_changes == 0;
            if (r.post_dir_changes > 0)
                std::cerr << "seed " << r.seed << ": " << r.post_dir_changes << " dir changes after orientation\n";
        }
        return ok ? 0 : kFailed;
    }

    struct LotteryArgs
    {
        int k = 4;
        int c = 1;
        std::uint64_t trials = 10000;
        std::uint64_t rounds = 100000;
        std::uint64_t seed = 1;
        std::string bound = "both";
    };

    int do_lottery(const LotteryArgs &a)
    {
        std::cout << "bound,k,c,trials,flips_per_trial,threshold,failures,failure_rate,reference\n";
        std::vector<LotteryBound> bounds;
        if (a.bound != "lower")
            bounds.push_back(LotteryBound::Upper);
        if (a.bound != "upper")
            bounds.push_back(LotteryBound::Lower);
        for (const auto which : bounds)
        {
            const auto e = estimate_bound(a.k, a.c, which, a.trials, a.seed);
            std::cout << (which == LotteryBound::Upper ? "upper" : "lower") << ',' << a.k << ',' << a.c << ','
                      << e.trials << ',' << e.flips_per_trial << ',' << e.threshold << ',' << e.failures << ','
                      << e.failure_rate << ',' << e.reference_bound << '\n';
        }
        const auto r = play_rounds(a.k, a.rounds, a.seed);
        const double p = std::ldexp(1.0, -a.k);
        const double rate = static_cast<double>(r.rounds_won) / static_cast<double>(r.rounds_played);
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(r.rounds_played));
        std::cout << "round win rate " << rate << " (expected " << p << ", " << std::abs(rate - p) / sigma
                  << " sigma)\n";
        return 0;
    }

    const std::map<std::string, bool (*)(const Configuration &)> &predicates()
    {
        static const std::map<std::string, bool (*)(const Configuration &)> table = {
            {"in_range", [](const Configuration &c) { return in_range(c); }},
            {"is_perfect", [](const Configuration &c) { return is_perfect(c); }},
            {"unique_leader", [](const Configuration &c) { return unique_leader(c).has_value(); }},
            {"in_C_PB", [](const Configuration &c) { return in_C_PB(c); }},
            {"in_C_DL", [](const Configuration &c) { return in_C_DL(c); }},
            {"in_S_PL", [](const Configuration &c) { return in_S_PL(c); }},
        };
        return table;
    }

    int do_check(const std::string &path, const std::vector<std::string> &names)
    {
        const Configuration config = read_config(path);
        std::vector<std::string> selected = names;
        if (selected.empty() || (selected.size() == 1 && selected[0] == "all"))
        {
            selected.clear();
            for (const auto &[name, fn] : predicates())
                selected.push_back(name);
        }
        bool all = true;
        std::cout << "leader_count " << leader_count(config) << '\n';
        for (const auto &name : selected)
        {
            const auto it = predicates().find(name);
            if (it == predicates().end())
                throw CLI::ValidationError("--predicate", "unknown predicate '" + name + "'");
            bool value = false;
            try
            {
                value = it->second(config);
            }
            catch (const NoBorderError &)
            {
                value = false;
            }
            std::cout << name << ' ' << (value ? "true" : "false") << '\n';
            all = all && value;
        }
        return all ? 0 : kFailed;
    }

    struct DumpArgs
    {
        int n = 16;
        std::uint64_t seed = 1;
        std::string kind = "random";
        int leaders = 2;
        std::optional<int> kappa_max;
        std::string out;
    };

    int do_dump(const DumpArgs &a)
    {
        const ProtocolParams params = make_params(a.n, a.kappa_max);
        Configuration config;
        if (a.kind == "random")
            config = random_configuration(params, a.seed);
        else if (a.kind == "safe")
            config = construct_S_PL(params, a.seed);
        else
            config = multi_leader_configuration(params, a.leaders, a.seed);

        if (a.out.empty() || a.out == "-")
            std::cout << dump_config(config);
        else
            write_config(config, a.out);
        return 0;
    }

    int do_load(const std::string &path)
    {
        const Configuration config = read_config(path);
        std::cout << "n " << config.params.n << " psi " << config.params.psi << " kappa_max "
                  << config.params.kappa_max << " leaders " << leader_count(config) << '\n';
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Simulator and checker for self-stabilizing leader election and ring orientation on rings"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto *cmd_sweep = app.add_subcommand("sweep", "convergence sweep from random configurations, CSV output");
    cmd_sweep->add_option("--protocol", sweep.protocol, "PPL, POR or Lottery")
        ->check(CLI::IsMember({"PPL", "POR", "Lottery", "ppl", "por", "lottery"}));
    cmd_sweep->add_option("--n", sweep.n, "ring sizes (comma separated)")->delimiter(',');
    cmd_sweep->add_option("--trials", sweep.trials, "trials per n")->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--seed", sweep.seed, "base seed");
    cmd_sweep->add_option("--multiplier", sweep.multiplier, "cutoff = multiplier * n^2 * log2 n")
        ->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--kappa-max", sweep.kappa_max, "override kappa_max (at least 32 psi)");
    cmd_sweep->add_option("--workers", sweep.workers, "worker threads (0 = all cores)");
    cmd_sweep->add_option("--instrument", sweep.instrument, "per-step checks: in_range, trajectory, monotone")
        ->delimiter(',');
    cmd_sweep->add_option("--out", sweep.out, "CSV file (default stdout)");

    ClosureArgs closure;
    auto *cmd_closure = app.add_subcommand("closure", "closure of the safe set from constructed safe starts");
    cmd_closure->add_option("--protocol", closure.protocol, "PPL or POR")
        ->check(CLI::IsMember({"PPL", "POR", "ppl", "por"}));
    cmd_closure->add_option("--n", closure.n, "ring size");
    cmd_closure->add_option("--trials", closure.trials)->check(CLI::PositiveNumber);
    cmd_closure->add_option("--seed", closure.seed);
    cmd_closure->add_option("--steps", closure.steps, "steps per trial");
    cmd_closure->add_option("--workers", closure.workers);
    cmd_closure->add_option("--from", closure.from, "start from this JSON snapshot instead (PPL)")
        ->check(CLI::ExistingFile);

    EliminateArgs elim;
    auto *cmd_elim = app.add_subcommand("eliminate", "leader elimination from evenly spaced shielded leaders");
    cmd_elim->add_option("--n", elim.n);
    cmd_elim->add_option("--leaders", elim.leaders, "initial leader counts (comma separated)")->delimiter(',');
    cmd_elim->add_option("--trials", elim.trials)->check(CLI::PositiveNumber);
    cmd_elim->add_option("--seed", elim.seed);
    cmd_elim->add_option("--max-steps", elim.max_steps, "0 = 1e4 n^2 log2 n");
    cmd_elim->add_option("--workers", elim.workers);

    OrientArgs orient;
    auto *cmd_orient = app.add_subcommand("orient", "ring orientation from random dir/strong");
    cmd_orient->add_option("--n", orient.n)->check(CLI::Range(3, 1 << 20));
    cmd_orient->add_option("--seeds", orient.seeds, "number of seeds")->check(CLI::PositiveNumber);
    cmd_orient->add_option("--seed", orient.seed, "base seed");
    cmd_orient->add_option("--max-steps", orient.max_steps, "0 = 1e4 n^2 log2 n");
    cmd_orient->add_option("--post-steps", orient.post_steps, "steps watched after orientation");
    cmd_orient->add_flag("--amnesiac", orient.amnesiac, "agents start without neighbor colors");
    cmd_orient->add_option("--workers", orient.workers);
    cmd_orient->add_option("--out", orient.out, "CSV file (default stdout)");

    LotteryArgs lottery;
    auto *cmd_lottery = app.add_subcommand("lottery", "lottery game bound estimates");
    cmd_lottery->add_option("--k", lottery.k)->check(CLI::Range(1, 40));
    cmd_lottery->add_option("--c", lottery.c)->check(CLI::PositiveNumber);
    cmd_lottery->add_option("--trials", lottery.trials)->check(CLI::PositiveNumber);
    cmd_lottery->add_option("--rounds", lottery.rounds)->check(CLI::PositiveNumber);
    cmd_lottery->add_option("--seed", lottery.seed);
    cmd_lottery->add_option("--bound", lottery.bound, "upper, lower or both")
        ->check(CLI::IsMember({"upper", "lower", "both"}));

    std::string check_path;
    std::vector<std::string> check_predicates;
    auto *cmd_check = app.add_subcommand("check", "evaluate predicates on a JSON snapshot");
    cmd_check->add_option("file", check_path)->required();
    cmd_check->add_option("--predicate", check_predicates,
                          "in_range, is_perfect, unique_leader, in_C_PB, in_C_DL, in_S_PL or all")
        ->delimiter(',');

    DumpArgs dump;
    auto *cmd_dump = app.add_subcommand("dump", "write a configuration snapshot");
    cmd_dump->add_option("--n", dump.n);
    cmd_dump->add_option("--seed", dump.seed);
    cmd_dump->add_option("--kind", dump.kind, "random, safe or leaders")
        ->check(CLI::IsMember({"random", "safe", "leaders"}));
    cmd_dump->add_option("--leaders", dump.leaders, "leader count for --kind leaders");
    cmd_dump->add_option("--kappa-max", dump.kappa_max);
    cmd_dump->add_option("--out", dump.out, "file (default stdout)");

    std::string load_path;
    auto *cmd_load = app.add_subcommand("load", "parse and validate a snapshot");
    cmd_load->add_option("file", load_path)->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kBadInput;
    }

    try
    {
        if (*cmd_sweep)
            return do_sweep(sweep);
        if (*cmd_closure)
            return do_closure(closure);
        if (*cmd_elim)
            return do_eliminate(elim);
        if (*cmd_orient)
            return do_orient(orient);
        if (*cmd_lottery)
            return do_lottery(lottery);
        if (*cmd_check)
            return do_check(check_path, check_predicates);
        if (*cmd_dump)
            return do_dump(dump);
        if (*cmd_load)
            return do_load(load_path);
    }
    catch (const ParseError &e)
    {
        std::cerr << "parse error: " << e.what() << '\n';
        return kBadInput;
    }
    catch (const CLI::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}
