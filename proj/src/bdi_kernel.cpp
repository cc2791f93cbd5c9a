#include "iadsim/bdi_kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace iadsim::bdi {

const Scalar* find_field(const Payload& payload, const std::string& key) {
    for (const auto& [k, v] : payload) {
        if (k == key) return &v;
    }
    return nullptr;
}

double get_real(const Payload& payload, const std::string& key) {
    const Scalar* s = find_field(payload, key);
    if (!s) throw std::out_of_range("payload field missing: " + key);
    if (std::holds_alternative<double>(*s)) return std::get<double>(*s);
    if (std::holds_alternative<std::int64_t>(*s)) return static_cast<double>(std::get<std::int64_t>(*s));
    throw std::invalid_argument("payload field is not numeric: " + key);
}

const Belief* Beliefset::find(const Tuple& key) const {
    for (const Belief& b : beliefs) {
        if (b.key == key) return &b;
    }
    return nullptr;
}

Beliefset& AgentState::beliefset(const std::string& name) {
    return beliefsets[name];
}

const Beliefset* AgentState::find_beliefset(const std::string& name) const {
    auto it = beliefsets.find(name);
    return it == beliefsets.end() ? nullptr : &it->second;
}

void AgentState::add_plan(PlanSpec plan) {
    for (const PlanSpec& existing : plan_repository) {
        if (existing.name == plan.name) {
            throw std::invalid_argument("duplicate plan name: " + plan.name);
        }
    }
    plan_repository.push_back(std::move(plan));
}

namespace {

std::string format_tuple(const Tuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ',';
        out += format_scalar(t[i]);
    }
    return out;
}

void enqueue(AgentState& state, Event ev) {
    ev.seq = state.next_seq++;
    state.pending_events.push_back(std::move(ev));
}

}  // namespace

void assert_belief(AgentState& state, Belief belief,
                   const std::optional<std::string>& auto_post,
                   std::vector<LogRecord>* records) {
    if (belief.key.empty()) throw std::invalid_argument("belief key must be non-empty");

    Beliefset& bs = state.beliefset(belief.beliefset);
    // last-writer-wins: drop the stale entry, append the new one
    auto it = std::find_if(bs.beliefs.begin(), bs.beliefs.end(),
                           [&](const Belief& b) { return b.key == belief.key; });
    if (it != bs.beliefs.end()) bs.beliefs.erase(it);

    if (records) {
        records->push_back(LogRecord{belief.tick,
                                     state.agent_id,
                                     "belief",
                                     {{"set", belief.beliefset},
                                      {"key", format_tuple(belief.key)},
                                      {"value", format_tuple(belief.value)}}});
    }

    if (auto_post) {
        Payload payload;
        for (std::size_t i = 0; i < belief.value.size(); ++i) {
            std::string name =
                i < bs.value_names.size() ? bs.value_names[i] : "v" + std::to_string(i);
            payload.emplace_back(std::move(name), belief.value[i]);
        }
        payload.emplace_back("clock", static_cast<std::int64_t>(belief.tick));
        enqueue(state, Event{*auto_post, std::move(payload), state.agent_id, belief.tick, 0});
    }

    bs.beliefs.push_back(std::move(belief));
}

std::optional<Belief> query_belief(const AgentState& state, const std::string& beliefset,
                                   const Tuple& key) {
    const Beliefset* bs = state.find_beliefset(beliefset);
    if (!bs) return std::nullopt;
    const Belief* b = bs->find(key);
    if (!b) return std::nullopt;
    return *b;
}

std::optional<PlanInstance> select_plan(const AgentState& state, const Event& event) {
    std::optional<PlanInstance> best;
    for (std::size_t i = 0; i < state.plan_repository.size(); ++i) {
        const PlanSpec& plan = state.plan_repository[i];
        if (plan.handled_kind != event.kind) continue;
        if (plan.relevance && !plan.relevance(event.payload)) continue;

        std::vector<Payload> bindings;
        if (plan.context) {
            bindings = plan.context(state, event.payload);
        } else {
            bindings.emplace_back();
        }
        for (Payload& binding : bindings) {
            int rank = plan.rank_fn ? plan.rank_fn(event.payload, binding) : 0;
            rank = std::clamp(rank, 0, kMaxRank);
            const int precedence = kMaxRank - rank;
            if (!best || precedence > best->precedence) {
                best = PlanInstance{i, plan.name, std::move(binding), rank, precedence};
            }
        }
    }
    return best;
}

void run_tick(AgentState& state, int tick, TickResult& out) {
    if (tick != state.last_tick + 1 && !(state.last_tick == -1 && tick == 0)) {
        throw std::invalid_argument("non-consecutive tick " + std::to_string(tick) +
                                    " after " + std::to_string(state.last_tick));
    }
    state.last_tick = tick;

    int processed = 0;
    while (!state.pending_events.empty()) {
        if (++processed > kCycleGuardLimit) throw CycleGuardExceeded(tick);
        Event ev = std::move(state.pending_events.front());
        state.pending_events.pop_front();

        std::optional<PlanInstance> instance = select_plan(state, ev);
        if (!instance) {
            out.records.push_back(
                LogRecord{tick, state.agent_id, "dropped", {{"ev", ev.kind}}});
            out.events.push_back(std::move(ev));
            continue;
        }

        out.records.push_back(LogRecord{
            tick, state.agent_id, "event",
            {{"ev", ev.kind}, {"plan", instance->plan_name}}});

        ActionContext ctx(state, ev, instance->binding, tick, out);
        const PlanSpec& plan = state.plan_repository[instance->plan_index];
        for (const PlanAction& action : plan.body) {
            action(ctx);
        }
        out.events.push_back(std::move(ev));
    }
}

TickResult run_tick(AgentState& state, int tick) {
    TickResult out;
    run_tick(state, tick, out);
    return out;
}

void ActionContext::assert_belief(Belief belief, const std::optional<std::string>& auto_post) {
    bdi::assert_belief(state_, std::move(belief), auto_post, &out_.records);
}

void ActionContext::post(const std::string& kind, Payload payload) {
    enqueue(state_, Event{kind, std::move(payload), state_.agent_id, tick_, 0});
}

void ActionContext::set_modes(std::vector<std::string> modes) {
    std::string joined;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (i) joined += ',';
        joined += modes[i];
    }
    out_.records.push_back(
        LogRecord{tick_, state_.agent_id, "mode", {{"modes", std::move(joined)}}});
    out_.modes = std::move(modes);
    out_.modes_set = true;
}

void ActionContext::log(const std::string& kind,
                        std::vector<std::pair<std::string, std::string>> fields) {
    out_.records.push_back(LogRecord{tick_, state_.agent_id, kind, std::move(fields)});
}

}  // namespace iadsim::bdi
