#include "iadsim/radar_agent.hpp"

#include <algorithm>
#include <cstdlib>

namespace iadsim::srdr {

std::string to_string(RadarMode mode) {
    switch (mode) {
        case RadarMode::SenseMode: return "Sense Mode";
        case RadarMode::SleepMode: return "Sleep Mode";
        case RadarMode::SwitchOff: return "Switch Off";
        case RadarMode::FrequencyHopping: return "Frequency Hopping";
    }
    return {};
}

std::optional<RadarMode> radar_mode_from_string(const std::string& name) {
    if (name == "Sense Mode") return RadarMode::SenseMode;
    if (name == "Sleep Mode") return RadarMode::SleepMode;
    if (name == "Switch Off") return RadarMode::SwitchOff;
    if (name == "Frequency Hopping") return RadarMode::FrequencyHopping;
    return std::nullopt;
}

void SrdrConfig::validate() const {
    if (!(0.0 < theta_low && theta_low < theta_high && theta_high < 1.0)) {
        throw InvalidSpec("radar thresholds need 0 < theta_low < theta_high < 1");
    }
}

double compute_ntd(long n_t, long n_next) {
    if (n_t < 0 || n_next < 0) throw std::invalid_argument("negative target count");
    if (n_t == 0) return n_next == 0 ? 0.0 : 1.0;
    return std::abs(static_cast<double>(n_t - n_next)) / static_cast<double>(n_t);
}

NtdAction classify_ntd(double ntd, const SrdrConfig& cfg) {
    if (ntd < cfg.theta_low) return NtdAction::NoAction;
    if (ntd <= cfg.theta_high) return NtdAction::FrequencyHopping;
    return NtdAction::SwitchOff;
}

RadarAgent::RadarAgent(SrdrConfig cfg, std::string agent_id) : cfg_(cfg) {
    cfg_.validate();
    state_.agent_id = std::move(agent_id);
    state_.beliefset("ntd").value_names = {"NTD"};

    const double low = cfg_.theta_low;
    const double high = cfg_.theta_high;

    bdi::PlanSpec no_action;
    no_action.name = "no-action";
    no_action.handled_kind = kNtdEvent;
    no_action.relevance = [low](const bdi::Payload& p) { return bdi::get_real(p, "NTD") < low; };
    no_action.body = {[](bdi::ActionContext& ctx) {
        ctx.set_modes({to_string(RadarMode::SenseMode)});
    }};
    state_.add_plan(std::move(no_action));

    bdi::PlanSpec jamming;
    jamming.name = "jamming-response";
    jamming.handled_kind = kNtdEvent;
    jamming.relevance = [low](const bdi::Payload& p) { return bdi::get_real(p, "NTD") >= low; };
    jamming.body = {[](bdi::ActionContext& ctx) {
        // forward NTD value and clock time for the mode plans
        bdi::Payload payload;
        payload.emplace_back("NTD", bdi::get_real(ctx.trigger().payload, "NTD"));
        payload.emplace_back("clock", static_cast<std::int64_t>(ctx.tick()));
        ctx.post(kJammingEvent, std::move(payload));
    }};
    state_.add_plan(std::move(jamming));

    bdi::PlanSpec hopping;
    hopping.name = "frequency-hopping";
    hopping.handled_kind = kJammingEvent;
    hopping.relevance = [low, high](const bdi::Payload& p) {
        const double ntd = bdi::get_real(p, "NTD");
        return ntd >= low && ntd <= high;
    };
    hopping.body = {[](bdi::ActionContext& ctx) {
        ctx.set_modes({to_string(RadarMode::SenseMode), to_string(RadarMode::FrequencyHopping)});
    }};
    state_.add_plan(std::move(hopping));

    bdi::PlanSpec switch_off;
    switch_off.name = "radar-switch-off";
    switch_off.handled_kind = kJammingEvent;
    switch_off.relevance = [high](const bdi::Payload& p) {
        return bdi::get_real(p, "NTD") > high;
    };
    switch_off.body = {[](bdi::ActionContext& ctx) {
        ctx.set_modes({to_string(RadarMode::SleepMode), to_string(RadarMode::SwitchOff)});
    }};
    state_.add_plan(std::move(switch_off));
}

RadarAgent::StepResult RadarAgent::step(const RadarObservation& obs) {
    StepResult result;
    if (!prev_count_) {
        // no prior count: nothing to index, radar keeps sensing
        prev_count_ = obs.count;
        state_.last_tick = obs.tick;
        result.modes = modes_;
        result.records.push_back(LogRecord{
            obs.tick, state_.agent_id, "mode", {{"modes", to_string(RadarMode::SenseMode)}}});
        return result;
    }

    const double ntd = compute_ntd(*prev_count_, obs.count);
    prev_count_ = obs.count;
    result.ntd = ntd;
    result.action = classify_ntd(ntd, cfg_);

    bdi::TickResult tick_out;
    bdi::assert_belief(state_,
                       bdi::Belief{"ntd", {static_cast<std::int64_t>(obs.tick)}, {ntd}, obs.tick},
                       kNtdEvent, &tick_out.records);
    bdi::run_tick(state_, obs.tick, tick_out);

    if (tick_out.modes_set) {
        JointMode next;
        for (const std::string& name : tick_out.modes) {
            if (auto mode = radar_mode_from_string(name)) next.push_back(*mode);
        }
        std::sort(next.begin(), next.end());
        modes_ = std::move(next);
    }

    result.modes = modes_;
    result.events = std::move(tick_out.events);
    result.records = std::move(tick_out.records);
    return result;
}

}  // namespace iadsim::srdr
