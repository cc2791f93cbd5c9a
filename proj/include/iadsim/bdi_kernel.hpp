#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iadsim/common.hpp"
#include "iadsim/event_log.hpp"

namespace iadsim::bdi {

using Tuple = std::vector<Scalar>;

// Ordered key/value pairs; order is part of the deterministic log output.
using Payload = std::vector<std::pair<std::string, Scalar>>;

const Scalar* find_field(const Payload& payload, const std::string& key);
double get_real(const Payload& payload, const std::string& key);

struct Belief {
    std::string beliefset;
    Tuple key;
    Tuple value;
    int tick = 0;
};

struct Event {
    std::string kind;
    Payload payload;
    std::string source;
    int tick = 0;
    std::uint64_t seq = 0;  // emission sequence, assigned by the queue
};

// Beliefsets keep insertion order; a same-key re-insert removes the old entry
// and appends, so ticks stay non-decreasing along the stored order.
struct Beliefset {
    std::vector<std::string> value_names;  // names auto-posted events use for value fields
    std::vector<Belief> beliefs;

    const Belief* find(const Tuple& key) const;
};

struct AgentState;

class ActionContext;
using PlanAction = std::function<void(ActionContext&)>;

// A plan: relevance filters on the event payload, context expands to zero or
// more variable bindings against the beliefsets, rank orders the instances.
struct PlanSpec {
    std::string name;
    std::string handled_kind;
    std::function<bool(const Payload&)> relevance;  // null: always relevant
    std::function<std::vector<Payload>(const AgentState&, const Payload&)> context;  // null: one empty binding
    std::function<int(const Payload&, const Payload&)> rank_fn;  // null: rank 0
    std::vector<PlanAction> body;
};

struct PlanInstance {
    std::size_t plan_index = 0;
    std::string plan_name;
    Payload binding;
    int rank = 0;
    int precedence = 9;  // 9 - rank
};

struct AgentState {
    std::string agent_id;
    std::map<std::string, Beliefset> beliefsets;
    std::vector<PlanSpec> plan_repository;
    std::deque<Event> pending_events;
    std::uint64_t next_seq = 0;
    int last_tick = -1;

    Beliefset& beliefset(const std::string& name);  // creates on first use
    const Beliefset* find_beliefset(const std::string& name) const;
    void add_plan(PlanSpec plan);  // enforces unique names
};

// Everything drained or written during one run_tick call. Kernel appends as it
// goes, so partial output survives a CycleGuardExceeded throw.
struct TickResult {
    std::vector<Event> events;       // every event that passed through the queue
    std::vector<LogRecord> records;
    std::vector<std::string> modes;  // last joint mode set requested, empty if none
    bool modes_set = false;
};

// Handed to plan body actions while they run.
class ActionContext {
public:
    ActionContext(AgentState& state, const Event& trigger, const Payload& binding, int tick,
                  TickResult& out)
        : state_(state), trigger_(trigger), binding_(binding), tick_(tick), out_(out) {}

    const Event& trigger() const { return trigger_; }
    const Payload& binding() const { return binding_; }
    int tick() const { return tick_; }
    AgentState& state() { return state_; }

    void assert_belief(Belief belief, const std::optional<std::string>& auto_post = std::nullopt);
    void post(const std::string& kind, Payload payload);
    void set_modes(std::vector<std::string> modes);
    void log(const std::string& kind, std::vector<std::pair<std::string, std::string>> fields);

private:
    AgentState& state_;
    const Event& trigger_;
    const Payload& binding_;
    int tick_;
    TickResult& out_;
};

// Appends (or replaces, last-writer-wins per key) a belief. With auto_post an
// event of that kind carrying the value fields plus the clock is enqueued.
void assert_belief(AgentState& state, Belief belief,
                   const std::optional<std::string>& auto_post = std::nullopt,
                   std::vector<LogRecord>* records = nullptr);

std::optional<Belief> query_belief(const AgentState& state, const std::string& beliefset,
                                   const Tuple& key);

// Three-stage selection: relevance -> context bindings -> max precedence
// (= min rank). Ties go to plan declaration order, then binding order.
std::optional<PlanInstance> select_plan(const AgentState& state, const Event& event);

// Drains the queue for one tick, firing at most one plan instance per event.
// Cascades posted within the tick are consumed in the same tick, up to the
// 100-events guard.
void run_tick(AgentState& state, int tick, TickResult& out);
TickResult run_tick(AgentState& state, int tick);

inline constexpr int kCycleGuardLimit = 100;
inline constexpr int kMaxRank = 9;

}  // namespace iadsim::bdi
