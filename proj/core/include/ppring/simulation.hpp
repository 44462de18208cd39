#pragma once

#include "ppring/configuration.hpp"
#include "ppring/scheduler.hpp"

#include <cstdint>
#include <functional>

namespace ppring
{
    /// Applies the P_PL transition to (u_index, u_{index+1}); other agents untouched.
    void step_in_place(Configuration &config, int index);

    /// Value form of step_in_place.
    Configuration step(Configuration config, int index);

    using StopPredicate = std::function<bool(const Configuration &)>;

    struct RunResult
    {
        Configuration config;
        std::uint64_t steps = 0;
        bool stopped = false;
    };

    /// Steps with scheduler-drawn indices until `stop` holds or max_steps is reached.
    ///
    /// `stop` is evaluated before the first step and then every check_interval steps
    /// (0 selects n). A reported step count is therefore the first checked multiple
    /// of the interval at which the predicate held.
    RunResult run(Configuration config, Scheduler &scheduler, std::uint64_t max_steps, const StopPredicate &stop,
                  std::uint64_t check_interval = 0);
}
