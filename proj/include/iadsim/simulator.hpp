#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iadsim/event_log.hpp"
#include "iadsim/experiment.hpp"
#include "iadsim/scenario.hpp"

namespace iadsim::sim {

struct RunResult {
    std::vector<LogRecord> log;
    stats::ExperimentReport report;      // classification tallies over the run
    goals::TraceReport validation;       // mode-trace check after the loop
    std::vector<std::pair<int, goals::AtomSet>> mode_trace;
    std::vector<lccc::Assignment> assignments;
    std::uint64_t seed = 0;

    bool ok() const { return validation.valid(); }
};

// Deterministic world loop: per tick draw the detection count (suppressed
// during jamming episodes), step the radar agent, then the threat agent, and
// append their records. The mode trace is validated against the scenario's
// rule set (or the built-in radar rules) after the loop. When a plan loop
// trips the cycle guard the records produced so far are moved into
// partial_log (if given) before the error propagates.
RunResult run_simulation(const Scenario& scn,
                         std::optional<std::uint64_t> seed_override = std::nullopt,
                         std::optional<int> ticks_override = std::nullopt,
                         std::vector<LogRecord>* partial_log = nullptr);

// Seed batch in seed order; the parallel path is output-identical to serial.
std::vector<RunResult> run_many(const Scenario& scn, std::uint64_t base_seed, int count,
                                stats::Execution exec = stats::Execution::Serial);

// Mode records (kind=mode) of one agent folded into a per-tick goal-set
// trace; the last record of a tick wins.
std::vector<std::pair<int, goals::AtomSet>> extract_mode_trace(
    const std::vector<LogRecord>& log, const std::string& agent = "radar");

}  // namespace iadsim::sim
