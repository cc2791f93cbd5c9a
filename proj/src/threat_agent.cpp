#include "iadsim/threat_agent.hpp"

#include <algorithm>
#include <cmath>

namespace iadsim::lccc {

std::string to_string(Mission m) {
    return m == Mission::Strike ? "Strike" : "Escort";
}

std::string to_string(SizeLabel s) {
    switch (s) {
        case SizeLabel::Small: return "Small";
        case SizeLabel::Medium: return "Medium";
        case SizeLabel::Big: return "Big";
    }
    return {};
}

std::optional<Mission> mission_from_string(const std::string& name) {
    if (name == "Strike") return Mission::Strike;
    if (name == "Escort") return Mission::Escort;
    return std::nullopt;
}

double Trapezoid::membership(double x) const {
    if (x < a || x > d) return 0.0;
    if (x < b) return (x - a) / (b - a);
    if (x <= c) return 1.0;
    if (d == std::numeric_limits<double>::infinity()) return 1.0;
    return (d - x) / (d - c);
}

PackageTrapezoids PackageTrapezoids::defaults() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    PackageTrapezoids t;
    t.small = {0.0, 0.0, 3.0, 5.0};
    t.medium = {3.0, 5.0, 8.0, 10.0};
    t.big = {8.0, 10.0, inf, inf};
    return t;
}

void PackageTrapezoids::validate() const {
    for (const Trapezoid* t : {&small, &medium, &big}) {
        if (!(t->a <= t->b && t->b <= t->c && t->c <= t->d)) {
            throw ValidationError("trapezoid abscissae must satisfy a <= b <= c <= d");
        }
    }
}

double LcccConfig::pkg_value(SizeLabel s) const {
    switch (s) {
        case SizeLabel::Small: return value_small;
        case SizeLabel::Medium: return value_medium;
        case SizeLabel::Big: return value_big;
    }
    return value_small;
}

double LcccConfig::msn_value(Mission m) const {
    return m == Mission::Strike ? value_strike : value_escort;
}

SizeLabel package_label(int count, const PackageTrapezoids& traps) {
    if (count < 1) throw std::invalid_argument("aircraft count must be >= 1");
    const auto x = static_cast<double>(count);
    SizeLabel best = SizeLabel::Small;
    double best_mu = traps.small.membership(x);
    if (traps.medium.membership(x) >= best_mu) {
        best = SizeLabel::Medium;
        best_mu = traps.medium.membership(x);
    }
    if (traps.big.membership(x) >= best_mu) {
        best = SizeLabel::Big;
    }
    return best;
}

RankBreakdown plan_rank(double dist, SizeLabel pkg, Mission msn, const LcccConfig& cfg) {
    if (dist < 0.0) throw std::invalid_argument("distance must be >= 0");
    RankBreakdown rb;
    rb.distance = dist;
    rb.pkg_contrib = cfg.pkg_value(pkg) / 2.0;
    rb.msn_contrib = cfg.msn_value(msn) / 2.0;
    const double raw = std::floor(dist / 100.0 + rb.pkg_contrib + rb.msn_contrib);
    rb.rank = static_cast<int>(std::clamp(raw, 0.0, 9.0));
    return rb;
}

PriorityResult prioritize_clusters(const std::vector<Cluster>& clusters,
                                   const std::vector<VavpPoint>& vavps, const LcccConfig& cfg) {
    if (vavps.empty()) throw EmptyVavpSet();
    cfg.trapezoids.validate();

    PriorityResult result;
    constexpr SizeLabel labels[] = {SizeLabel::Small, SizeLabel::Medium, SizeLabel::Big};
    constexpr Mission missions[] = {Mission::Strike, Mission::Escort};

    for (const Cluster& cluster : clusters) {
        double d1 = std::numeric_limits<double>::infinity();
        for (const VavpPoint& v : vavps) d1 = std::min(d1, distance(cluster.location, v.location));

        const SizeLabel assessed = package_label(cluster.aircraft_count(), cfg.trapezoids);

        for (SizeLabel label : labels) {
            for (Mission mission : missions) {
                CandidateInstance inst;
                inst.cluster_id = cluster.id;
                inst.label = label;
                inst.mission = mission;
                inst.rank = plan_rank(d1, label, mission, cfg);
                inst.consistent = (label == assessed && mission == cluster.mission);
                result.enumerated.push_back(std::move(inst));
            }
        }

        PriorityEntry entry;
        entry.cluster = cluster;
        entry.d1 = d1;
        entry.label = assessed;
        entry.rank = plan_rank(d1, assessed, cluster.mission, cfg);
        result.ordered.push_back(std::move(entry));
    }

    std::stable_sort(result.ordered.begin(), result.ordered.end(),
                     [](const PriorityEntry& a, const PriorityEntry& b) {
                         if (a.rank.precedence() != b.rank.precedence()) {
                             return a.rank.precedence() > b.rank.precedence();
                         }
                         return a.cluster.id < b.cluster.id;
                     });
    return result;
}

AllocationResult allocate_interceptors(const std::vector<PriorityEntry>& priority,
                                       const std::vector<Interceptor>& interceptors, int tick) {
    AllocationResult result;
    std::vector<const Interceptor*> pool;
    for (const Interceptor& ic : interceptors) {
        if (ic.available) pool.push_back(&ic);
    }

    for (const PriorityEntry& entry : priority) {
        std::vector<const Aircraft*> targets;
        for (const Aircraft& ac : entry.cluster.members) targets.push_back(&ac);
        std::stable_sort(targets.begin(), targets.end(),
                         [](const Aircraft* a, const Aircraft* b) {
                             if (a->ranking != b->ranking) return a->ranking < b->ranking;
                             return a->id < b->id;
                         });

        for (const Aircraft* target : targets) {
            if (pool.empty()) {
                result.unassigned.push_back(target->id);
                continue;
            }
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < pool.size(); ++i) {
                const double d = distance(entry.cluster.location, pool[i]->location);
                if (d < best_d || (d == best_d && pool[i]->id < pool[best]->id)) {
                    best = i;
                    best_d = d;
                }
            }
            result.assignments.push_back(
                Assignment{target->id, pool[best]->id, entry.cluster.id, tick});
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        }
    }
    return result;
}

ThreatAgent::ThreatAgent(LcccConfig cfg, std::string agent_id) : cfg_(std::move(cfg)) {
    state_.agent_id = std::move(agent_id);
    state_.beliefset("cluster_vavp_distance").value_names = {"d1"};
    state_.beliefset("cluster_interceptor_distance").value_names = {"d2"};
    state_.beliefset("aircraft_ranking").value_names = {"ranking"};
    state_.beliefset("aircraft_availability").value_names = {"available"};
    state_.beliefset("interceptor_availability").value_names = {"available"};

    // ev1 -> prioritize: the context binds one instance per cluster consistent
    // with the assessed label and mission; the kernel's precedence pick is the
    // closest-cluster selection.
    bdi::PlanSpec prioritize;
    prioritize.name = "prioritize-clusters";
    prioritize.handled_kind = kBeliefsEvent;
    prioritize.context = [this](const bdi::AgentState&, const bdi::Payload&) {
        std::vector<bdi::Payload> bindings;
        if (cur_clusters_.empty()) return bindings;
        const PriorityResult pr = prioritize_clusters(cur_clusters_, cur_vavps_, cfg_);
        for (const PriorityEntry& e : pr.ordered) {
            bdi::Payload b;
            b.emplace_back("cluster", e.cluster.id);
            b.emplace_back("rank", static_cast<std::int64_t>(e.rank.rank));
            bindings.push_back(std::move(b));
        }
        return bindings;
    };
    prioritize.rank_fn = [](const bdi::Payload&, const bdi::Payload& binding) {
        return static_cast<int>(std::get<std::int64_t>(*bdi::find_field(binding, "rank")));
    };
    prioritize.body = {[this](bdi::ActionContext& ctx) {
        const PriorityResult pr = prioritize_clusters(cur_clusters_, cur_vavps_, cfg_);
        cur_result_->priority = pr;

        std::string order;
        for (const PriorityEntry& e : pr.ordered) {
            if (!order.empty()) order += ',';
            order += e.cluster.id;
        }
        ctx.log("priority",
                {{"order", order},
                 {"instances", std::to_string(pr.enumerated.size())}});

        if (!pr.ordered.empty()) {
            bdi::Payload payload;
            payload.emplace_back("cluster", pr.ordered.front().cluster.id);
            payload.emplace_back("rank",
                                 static_cast<std::int64_t>(pr.ordered.front().rank.rank));
            payload.emplace_back("clock", static_cast<std::int64_t>(ctx.tick()));
            ctx.post(kPriorityEvent, std::move(payload));
        }
    }};
    state_.add_plan(std::move(prioritize));

    // ev2 -> allocate: greedy pairing over the still-available aircraft and
    // interceptors, one ev3 per pairing.
    bdi::PlanSpec allocate;
    allocate.name = "allocate-interceptors";
    allocate.handled_kind = kPriorityEvent;
    allocate.body = {[this](bdi::ActionContext& ctx) {
        std::vector<PriorityEntry> pending;
        for (const PriorityEntry& e : cur_result_->priority.ordered) {
            PriorityEntry copy = e;
            copy.cluster.members.clear();
            for (const Aircraft& ac : e.cluster.members) {
                if (target_available(ac.id)) copy.cluster.members.push_back(ac);
            }
            if (!copy.cluster.members.empty()) pending.push_back(std::move(copy));
        }
        std::vector<Interceptor> free_interceptors;
        for (const Interceptor& ic : cur_interceptors_) {
            if (ic.available && interceptor_available(ic.id)) free_interceptors.push_back(ic);
        }

        const AllocationResult alloc = allocate_interceptors(pending, free_interceptors, ctx.tick());
        cur_result_->allocation = alloc;

        for (const Assignment& a : alloc.assignments) {
            bdi::Payload payload;
            payload.emplace_back("target", a.target_id);
            payload.emplace_back("interceptor", a.interceptor_id);
            payload.emplace_back("cluster", a.cluster_id);
            payload.emplace_back("clock", static_cast<std::int64_t>(a.tick));
            ctx.post(kPairingEvent, std::move(payload));
        }
    }};
    state_.add_plan(std::move(allocate));

    // ev3 -> bookkeeping: flip availability in beliefsets 4 and 5
    bdi::PlanSpec record;
    record.name = "record-assignment";
    record.handled_kind = kPairingEvent;
    record.body = {[](bdi::ActionContext& ctx) {
        const bdi::Payload& p = ctx.trigger().payload;
        const std::string target = std::get<std::string>(*bdi::find_field(p, "target"));
        const std::string interceptor = std::get<std::string>(*bdi::find_field(p, "interceptor"));
        const std::string cluster = std::get<std::string>(*bdi::find_field(p, "cluster"));
        ctx.assert_belief(bdi::Belief{
            "aircraft_availability", {target}, {static_cast<std::int64_t>(0)}, ctx.tick()});
        ctx.assert_belief(bdi::Belief{
            "interceptor_availability", {interceptor}, {static_cast<std::int64_t>(0)}, ctx.tick()});
        ctx.log("assignment",
                {{"target", target}, {"interceptor", interceptor}, {"cluster", cluster}});
    }};
    state_.add_plan(std::move(record));
}

bool ThreatAgent::target_available(const std::string& id) const {
    const auto belief = bdi::query_belief(state_, "aircraft_availability", {id});
    if (!belief) return true;  // never seen: available
    return std::get<std::int64_t>(belief->value.at(0)) != 0;
}

bool ThreatAgent::interceptor_available(const std::string& id) const {
    const auto belief = bdi::query_belief(state_, "interceptor_availability", {id});
    if (!belief) return true;
    return std::get<std::int64_t>(belief->value.at(0)) != 0;
}

ThreatAgent::StepResult ThreatAgent::step(const std::vector<Cluster>& clusters,
                                          const std::vector<VavpPoint>& vavps,
                                          const std::vector<Interceptor>& interceptors,
                                          int tick) {
    StepResult result;
    cur_clusters_ = clusters;
    cur_vavps_ = vavps;
    cur_interceptors_ = interceptors;
    cur_result_ = &result;

    bdi::TickResult tick_out;

    // beliefsets 1..5: distances, rankings, availability
    for (const Cluster& c : clusters) {
        for (const VavpPoint& v : vavps) {
            bdi::assert_belief(
                state_,
                bdi::Belief{
                    "cluster_vavp_distance", {c.id, v.id}, {distance(c.location, v.location)}, tick},
                std::nullopt, &tick_out.records);
        }
        for (const Interceptor& ic : interceptors) {
            bdi::assert_belief(state_,
                               bdi::Belief{"cluster_interceptor_distance",
                                           {c.id, ic.id},
                                           {distance(c.location, ic.location)},
                                           tick},
                               std::nullopt, &tick_out.records);
        }
        for (const Aircraft& ac : c.members) {
            bdi::assert_belief(
                state_,
                bdi::Belief{"aircraft_ranking", {c.id, ac.id}, {static_cast<std::int64_t>(ac.ranking)}, tick},
                std::nullopt, &tick_out.records);
            if (!bdi::query_belief(state_, "aircraft_availability", {ac.id})) {
                bdi::assert_belief(state_,
                                   bdi::Belief{"aircraft_availability",
                                               {ac.id},
                                               {static_cast<std::int64_t>(1)},
                                               tick},
                                   std::nullopt, &tick_out.records);
            }
        }
    }
    for (const Interceptor& ic : interceptors) {
        if (!bdi::query_belief(state_, "interceptor_availability", {ic.id})) {
            bdi::assert_belief(state_,
                               bdi::Belief{"interceptor_availability",
                                           {ic.id},
                                           {static_cast<std::int64_t>(ic.available ? 1 : 0)},
                                           tick},
                               std::nullopt, &tick_out.records);
        }
    }

    // ev1: all belief updating complete
    {
        bdi::Payload payload;
        payload.emplace_back("clusters", static_cast<std::int64_t>(clusters.size()));
        payload.emplace_back("clock", static_cast<std::int64_t>(tick));
        bdi::Event ev{kBeliefsEvent, std::move(payload), state_.agent_id, tick, 0};
        state_.pending_events.push_back(std::move(ev));
        state_.pending_events.back().seq = state_.next_seq++;
    }

    bdi::run_tick(state_, tick, tick_out);

    result.events = std::move(tick_out.events);
    result.records = std::move(tick_out.records);
    cur_result_ = nullptr;
    return result;
}

}  // namespace iadsim::lccc
