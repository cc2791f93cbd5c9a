#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iadsim/bdi_kernel.hpp"
#include "iadsim/common.hpp"

namespace iadsim::srdr {

enum class RadarMode { SenseMode, SleepMode, SwitchOff, FrequencyHopping };

std::string to_string(RadarMode mode);
std::optional<RadarMode> radar_mode_from_string(const std::string& name);

enum class NtdAction { NoAction, FrequencyHopping, SwitchOff };

struct SrdrConfig {
    double theta_low = 0.5;
    double theta_high = 0.75;

    void validate() const;  // 0 < low < high < 1
};

// |n_t - n_next| / n_t. A zero baseline saturates: 0 if both counts are zero,
// 1 if targets appear from nothing.
double compute_ntd(long n_t, long n_next);

// ntd < low: NoAction; low <= ntd <= high: FrequencyHopping; ntd > high:
// SwitchOff. Both boundaries are pinned: 0.5 already counts as jamming,
// 0.75 still hops.
NtdAction classify_ntd(double ntd, const SrdrConfig& cfg = {});

struct RadarObservation {
    int tick = 0;
    long count = 0;  // targets detected this tick
};

// Joint mode set, kept sorted by enum order; always one of {Sense},
// {FrequencyHopping, Sense} or {SwitchOff, Sleep}.
using JointMode = std::vector<RadarMode>;

// Surveillance radar agent on the BDI kernel. Each observation computes the
// NTD index against the previous count, asserts it (auto-posting the ntd
// event), and lets the plan cascade pick the mode.
class RadarAgent {
public:
    explicit RadarAgent(SrdrConfig cfg = {}, std::string agent_id = "radar");

    struct StepResult {
        JointMode modes;
        std::vector<bdi::Event> events;
        std::vector<LogRecord> records;
        std::optional<double> ntd;     // empty on the first tick
        NtdAction action = NtdAction::NoAction;
    };

    StepResult step(const RadarObservation& obs);

    const JointMode& modes() const { return modes_; }
    const bdi::AgentState& state() const { return state_; }
    const SrdrConfig& config() const { return cfg_; }

    static constexpr const char* kNtdEvent = "ntd-updated";
    static constexpr const char* kJammingEvent = "jamming-detected";

private:
    bdi::AgentState state_;
    SrdrConfig cfg_;
    std::optional<long> prev_count_;
    JointMode modes_{RadarMode::SenseMode};
};

}  // namespace iadsim::srdr
