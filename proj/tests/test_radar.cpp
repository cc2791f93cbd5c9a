#include <doctest.h>

#include <random>

#include "iadsim/default_logic.hpp"
#include "iadsim/radar_agent.hpp"

using namespace iadsim;
using namespace iadsim::srdr;

TEST_CASE("ntd index formula") {
    CHECK(compute_ntd(20, 20) == doctest::Approx(0.0));
    CHECK(compute_ntd(20, 8) == doctest::Approx(0.6));
    CHECK(compute_ntd(20, 19) == doctest::Approx(0.05));
    CHECK(compute_ntd(10, 25) == doctest::Approx(1.5));  // unbounded above
}

TEST_CASE("zero baseline saturates") {
    CHECK(compute_ntd(0, 0) == doctest::Approx(0.0));
    CHECK(compute_ntd(0, 5) == doctest::Approx(1.0));
}

TEST_CASE("ntd is invariant under count scaling") {
    std::mt19937 gen(11);
    std::uniform_int_distribution<long> counts(1, 60);
    std::uniform_int_distribution<long> scales(1, 9);
    for (int i = 0; i < 200; ++i) {
        const long a = counts(gen);
        const long b = counts(gen);
        const long k = scales(gen);
        CHECK(compute_ntd(k * a, k * b) == doctest::Approx(compute_ntd(a, b)));
    }
}

TEST_CASE("classification thresholds and boundary conventions") {
    CHECK(classify_ntd(0.4) == NtdAction::NoAction);
    CHECK(classify_ntd(0.6) == NtdAction::FrequencyHopping);
    CHECK(classify_ntd(0.8) == NtdAction::SwitchOff);
    CHECK(classify_ntd(0.5) == NtdAction::FrequencyHopping);   // closed lower bound
    CHECK(classify_ntd(0.75) == NtdAction::FrequencyHopping);  // closed upper bound
}

TEST_CASE("classification partitions every non-negative ntd") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> values(0.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const double ntd = values(gen);
        int hits = 0;
        if (classify_ntd(ntd) == NtdAction::NoAction) ++hits;
        if (classify_ntd(ntd) == NtdAction::FrequencyHopping) ++hits;
        if (classify_ntd(ntd) == NtdAction::SwitchOff) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("response weakens as the count difference shrinks") {
    const SrdrConfig cfg;
    const long n_t = 20;
    int last = 2;  // SwitchOff=2, FrequencyHopping=1, NoAction=0
    for (long n_next = 1; n_next <= 20; ++n_next) {
        const int level = [&] {
            switch (classify_ntd(compute_ntd(n_t, n_next), cfg)) {
                case NtdAction::SwitchOff: return 2;
                case NtdAction::FrequencyHopping: return 1;
                case NtdAction::NoAction: return 0;
            }
            return 0;
        }();
        CHECK(level <= last);
        last = level;
    }
}

TEST_CASE("config thresholds are validated") {
    CHECK_THROWS_AS((SrdrConfig{0.8, 0.5}).validate(), InvalidSpec);
    CHECK_THROWS_AS((SrdrConfig{0.0, 0.75}).validate(), InvalidSpec);
    CHECK_NOTHROW((SrdrConfig{}).validate());
}

namespace {

JointMode step_pair(RadarAgent& agent, int& tick, long prev, long now,
                    RadarAgent::StepResult* out = nullptr) {
    agent.step(RadarObservation{tick++, prev});
    RadarAgent::StepResult r = agent.step(RadarObservation{tick++, now});
    if (out) *out = r;
    return r.modes;
}

}  // namespace

TEST_CASE("steady counts keep the radar sensing, only the ntd event fires") {
    RadarAgent agent;
    int tick = 0;
    RadarAgent::StepResult r;
    const JointMode modes = step_pair(agent, tick, 20, 19, &r);
    CHECK(modes == JointMode{RadarMode::SenseMode});
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].kind == RadarAgent::kNtdEvent);
    CHECK(r.action == NtdAction::NoAction);
}

TEST_CASE("moderate drop goes to frequency hopping with sense mode") {
    RadarAgent agent;
    int tick = 0;
    RadarAgent::StepResult r;
    const JointMode modes = step_pair(agent, tick, 20, 8, &r);
    CHECK(modes == JointMode{RadarMode::SenseMode, RadarMode::FrequencyHopping});
    REQUIRE(r.events.size() == 2);
    CHECK(r.events[0].kind == RadarAgent::kNtdEvent);
    CHECK(r.events[1].kind == RadarAgent::kJammingEvent);
}

TEST_CASE("severe drop switches the radar off and sleeps") {
    RadarAgent agent;
    int tick = 0;
    const JointMode modes = step_pair(agent, tick, 20, 2);
    CHECK(modes == JointMode{RadarMode::SleepMode, RadarMode::SwitchOff});
}

TEST_CASE("first tick emits no ntd and stays sensing") {
    RadarAgent agent;
    const RadarAgent::StepResult r = agent.step(RadarObservation{0, 20});
    CHECK_FALSE(r.ntd.has_value());
    CHECK(r.modes == JointMode{RadarMode::SenseMode});
    CHECK(r.events.empty());
}

TEST_CASE("no-action recovers the radar from switch-off") {
    RadarAgent agent;
    agent.step(RadarObservation{0, 20});
    agent.step(RadarObservation{1, 1});   // ntd 0.95: off
    CHECK(agent.modes() == JointMode{RadarMode::SleepMode, RadarMode::SwitchOff});
    const auto r = agent.step(RadarObservation{2, 1});  // ntd 0: recover
    CHECK(r.modes == JointMode{RadarMode::SenseMode});
}

TEST_CASE("every post-step joint state is conflict-free") {
    const goals::RuleSet rules = goals::radar_mode_rules();
    RadarAgent agent;
    std::mt19937 gen(42);
    std::uniform_int_distribution<long> counts(1, 40);
    for (int tick = 0; tick < 300; ++tick) {
        const auto r = agent.step(RadarObservation{tick, counts(gen)});
        goals::AtomSet atoms;
        for (RadarMode m : r.modes) atoms.insert(to_string(m));
        CHECK(goals::check_conflicts(atoms, rules.forbidden).empty());
    }
}

TEST_CASE("jamming event count equals hopping plus switch-off count") {
    RadarAgent agent;
    std::mt19937 gen(5);
    std::uniform_int_distribution<long> counts(1, 40);
    int jamming_events = 0;
    int fh = 0;
    int off = 0;
    for (int tick = 0; tick < 500; ++tick) {
        const auto r = agent.step(RadarObservation{tick, counts(gen)});
        for (const auto& ev : r.events) {
            if (ev.kind == RadarAgent::kJammingEvent) ++jamming_events;
        }
        if (r.ntd) {
            switch (r.action) {
                case NtdAction::FrequencyHopping: ++fh; break;
                case NtdAction::SwitchOff: ++off; break;
                case NtdAction::NoAction: break;
            }
        }
    }
    CHECK(jamming_events == fh + off);
    CHECK(jamming_events > 0);
}
