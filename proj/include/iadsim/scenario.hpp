#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iadsim/default_logic.hpp"
#include "iadsim/distributions.hpp"
#include "iadsim/radar_agent.hpp"
#include "iadsim/threat_agent.hpp"

namespace iadsim::sim {

struct JammingEpisode {
    int start_tick = 0;
    int end_tick = 0;     // inclusive
    double factor = 1.0;  // detected counts are multiplied by this in (0, 1]
};

struct Waypoint {
    std::string cluster_id;
    int tick = 0;
    Point2 location;
};

struct Scenario {
    double width = 1000.0;
    double height = 1000.0;
    std::uint64_t seed = 0;
    int simulation_time = 60;
    int lccc_cadence = 1;  // threat agent acts every Nth tick

    stats::DistributionSpec detection = stats::DistributionSpec::normal(20.0, 10.0);
    std::vector<JammingEpisode> episodes;
    std::vector<lccc::VavpPoint> vavps;
    std::vector<lccc::Cluster> clusters;
    std::vector<Waypoint> waypoints;
    std::vector<lccc::Interceptor> interceptors;
    goals::RuleSet gir;  // empty: radar_mode_rules() applies
    lccc::LcccConfig lccc;
    srdr::SrdrConfig srdr;

    bool in_episode(int tick, double* factor = nullptr) const;
    // cluster location at a tick: last waypoint at or before it, else base
    Point2 cluster_location(const lccc::Cluster& c, int tick) const;

    void validate() const;  // throws ValidationError naming the invariant
};

// Sectioned text format: [WORLD] [DETECTION] [JAMMING] [VAVP] [CLUSTER]
// [WAYPOINT] [INTERCEPTOR] [GIR] [FUZZY], '#' comments, one key=value or one
// record per line. See docs/scenario_format.md.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(std::istream& in);

}  // namespace iadsim::sim
