#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "iadsim/bdi_kernel.hpp"
#include "iadsim/common.hpp"

namespace iadsim::lccc {

enum class Mission { Strike, Escort };
enum class SizeLabel { Small, Medium, Big };

std::string to_string(Mission m);
std::string to_string(SizeLabel s);
std::optional<Mission> mission_from_string(const std::string& name);

struct Aircraft {
    std::string id;
    int ranking = 0;  // scenario-assessed priority inside the cluster, lower first
};

struct Cluster {
    std::string id;
    Point2 location;
    Mission mission = Mission::Strike;
    std::vector<Aircraft> members;

    int aircraft_count() const { return static_cast<int>(members.size()); }
};

struct VavpPoint {
    std::string id;
    Point2 location;
    double value = 1.0;  // carried for configuration, default ranking is distance-only
};

struct Interceptor {
    std::string id;
    Point2 location;
    bool available = true;
};

struct Trapezoid {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double membership(double x) const;
};

struct PackageTrapezoids {
    Trapezoid small;
    Trapezoid medium;
    Trapezoid big;

    static PackageTrapezoids defaults();  // (0,0,3,5), (3,5,8,10), (8,10,inf,inf)
    void validate() const;
};

// Contributions and clamped rank for one plan instance:
// rank = clamp(floor(distance/100 + value1/2 + value2/2), 0, 9).
struct RankBreakdown {
    double distance = 0.0;
    double pkg_contrib = 0.0;
    double msn_contrib = 0.0;
    int rank = 0;

    int precedence() const { return 9 - rank; }
};

struct LcccConfig {
    PackageTrapezoids trapezoids = PackageTrapezoids::defaults();
    // per-label rank values; the big/strike entries double their contribution
    double value_small = 1.0;
    double value_medium = 1.0;
    double value_big = 2.0;
    double value_strike = 2.0;
    double value_escort = 1.0;

    double pkg_value(SizeLabel s) const;
    double msn_value(Mission m) const;
};

// Highest membership wins; ties go to the larger (more threatening) label.
SizeLabel package_label(int count, const PackageTrapezoids& traps);

RankBreakdown plan_rank(double dist, SizeLabel pkg, Mission msn, const LcccConfig& cfg = {});

struct PriorityEntry {
    Cluster cluster;
    double d1 = 0.0;  // min distance to any VAVP
    SizeLabel label = SizeLabel::Small;
    RankBreakdown rank;
};

struct CandidateInstance {
    std::string cluster_id;
    SizeLabel label = SizeLabel::Small;
    Mission mission = Mission::Strike;
    RankBreakdown rank;
    bool consistent = false;  // label/mission match the cluster's assessed ones
};

struct PriorityResult {
    std::vector<PriorityEntry> ordered;          // descending precedence, ties by id
    std::vector<CandidateInstance> enumerated;   // full label x mission x cluster space
};

// d1 = min Euclidean distance to a VAVP; one candidate instance per (cluster,
// size label, mission); clusters ordered by the precedence of their consistent
// instance. Throws EmptyVavpSet without at least one VAVP.
PriorityResult prioritize_clusters(const std::vector<Cluster>& clusters,
                                   const std::vector<VavpPoint>& vavps,
                                   const LcccConfig& cfg = {});

struct Assignment {
    std::string target_id;
    std::string interceptor_id;
    std::string cluster_id;
    int tick = 0;
};

struct AllocationResult {
    std::vector<Assignment> assignments;
    std::vector<std::string> unassigned;  // targets left without an interceptor
};

// Greedy walk: clusters in priority order, aircraft by (ranking, id), each
// target takes the nearest available interceptor (cluster-to-interceptor
// distance, ties by interceptor id). Interceptor exhaustion leaves the rest
// unassigned.
AllocationResult allocate_interceptors(const std::vector<PriorityEntry>& priority,
                                       const std::vector<Interceptor>& interceptors,
                                       int tick = 0);

// Threat-assessment / weapon-allocation agent on the BDI kernel. Keeps
// engaged aircraft and spent interceptors unavailable across ticks.
class ThreatAgent {
public:
    explicit ThreatAgent(LcccConfig cfg = {}, std::string agent_id = "threat");

    struct StepResult {
        PriorityResult priority;
        AllocationResult allocation;
        std::vector<bdi::Event> events;
        std::vector<LogRecord> records;
    };

    StepResult step(const std::vector<Cluster>& clusters, const std::vector<VavpPoint>& vavps,
                    const std::vector<Interceptor>& interceptors, int tick);

    const bdi::AgentState& state() const { return state_; }
    const LcccConfig& config() const { return cfg_; }

    static constexpr const char* kBeliefsEvent = "beliefs-updated";
    static constexpr const char* kPriorityEvent = "cluster-priority";
    static constexpr const char* kPairingEvent = "pairing";

private:
    bool target_available(const std::string& id) const;
    bool interceptor_available(const std::string& id) const;

    bdi::AgentState state_;
    LcccConfig cfg_;

    // per-step working set for the plan bodies
    std::vector<Cluster> cur_clusters_;
    std::vector<VavpPoint> cur_vavps_;
    std::vector<Interceptor> cur_interceptors_;
    StepResult* cur_result_ = nullptr;
};

}  // namespace iadsim::lccc
