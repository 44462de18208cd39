#include "ppring/simulation.hpp"

#include "ppring/transition.hpp"

#include <algorithm>
#include <utility>

namespace ppring
{
    void step_in_place(Configuration &config, int index)
    {
        const int n = config.size();
        auto &l = config.agents[static_cast<std::size_t>(index)];
        auto &r = config.agents[static_cast<std::size_t>(index + 1 == n ? 0 : index + 1)];
        interact_ppl_in_place(l, r, config.params);
    }

    Configuration step(Configuration config, int index)
    {
        step_in_place(config, index);
        return config;
    }

    RunResult run(Configuration config, Scheduler &scheduler, std::uint64_t max_steps, const StopPredicate &stop,
                  std::uint64_t check_interval)
    {
        if (check_interval == 0)
            check_interval = static_cast<std::uint64_t>(std::max(1, config.size()));

        RunResult result{std::move(config), 0, false};
        if (stop && stop(result.config))
        {
            result.stopped = true;
            return result;
        }
        while (result.steps < max_steps)
        {
            const std::uint64_t chunk = std::min(check_interval, max_steps - result.steps);
            for (std::uint64_t k = 0; k < chunk; ++k)
                step_in_place(result.config, scheduler.next());
            result.steps += chunk;
            if (stop && stop(result.config))
            {
                result.stopped = true;
                break;
            }
        }
        return result;
    }
}
