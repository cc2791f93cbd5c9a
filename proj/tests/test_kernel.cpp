#include <doctest.h>

#include <random>

#include "iadsim/bdi_kernel.hpp"

using namespace iadsim;
using namespace iadsim::bdi;

namespace {

AgentState make_agent() {
    AgentState state;
    state.agent_id = "test";
    return state;
}

}  // namespace

TEST_CASE("assert_belief auto-posts an event carrying value fields and clock") {
    AgentState state = make_agent();
    state.beliefset("ntd").value_names = {"NTD"};

    assert_belief(state, Belief{"ntd", {std::int64_t{4}}, {0.3}, 4}, std::string("ev1"));

    REQUIRE(state.pending_events.size() == 1);
    const Event& ev = state.pending_events.front();
    CHECK(ev.kind == "ev1");
    CHECK(get_real(ev.payload, "NTD") == doctest::Approx(0.3));
    CHECK(std::get<std::int64_t>(*find_field(ev.payload, "clock")) == 4);
}

TEST_CASE("insert then query returns the inserted value") {
    AgentState state = make_agent();
    assert_belief(state, Belief{"bs", {std::string("k")}, {std::int64_t{7}}, 0});
    const auto belief = query_belief(state, "bs", {std::string("k")});
    REQUIRE(belief.has_value());
    CHECK(std::get<std::int64_t>(belief->value.at(0)) == 7);
}

TEST_CASE("same-key re-insert is last-writer-wins") {
    AgentState state = make_agent();
    assert_belief(state, Belief{"bs", {std::string("k")}, {std::int64_t{1}}, 0});
    assert_belief(state, Belief{"bs", {std::string("k")}, {std::int64_t{2}}, 1});
    const auto belief = query_belief(state, "bs", {std::string("k")});
    REQUIRE(belief.has_value());
    CHECK(std::get<std::int64_t>(belief->value.at(0)) == 2);
    CHECK(state.beliefset("bs").beliefs.size() == 1);
}

TEST_CASE("belief keys must be non-empty") {
    AgentState state = make_agent();
    CHECK_THROWS_AS(assert_belief(state, Belief{"bs", {}, {std::int64_t{1}}, 0}),
                    std::invalid_argument);
}

TEST_CASE("beliefset ticks stay non-decreasing in insertion order") {
    AgentState state = make_agent();
    assert_belief(state, Belief{"bs", {std::int64_t{1}}, {std::int64_t{1}}, 0});
    assert_belief(state, Belief{"bs", {std::int64_t{2}}, {std::int64_t{2}}, 1});
    assert_belief(state, Belief{"bs", {std::int64_t{1}}, {std::int64_t{3}}, 2});  // rewrite key 1
    const auto& beliefs = state.beliefset("bs").beliefs;
    for (std::size_t i = 1; i < beliefs.size(); ++i) {
        CHECK(beliefs[i - 1].tick <= beliefs[i].tick);
    }
}

namespace {

PlanSpec threshold_plan(const std::string& name, bool above) {
    PlanSpec plan;
    plan.name = name;
    plan.handled_kind = "ev1";
    plan.relevance = [above](const Payload& p) {
        const double v = get_real(p, "NTD");
        return above ? v >= 0.5 : v < 0.5;
    };
    return plan;
}

}  // namespace

TEST_CASE("relevance keeps only matching plans") {
    AgentState state = make_agent();
    state.add_plan(threshold_plan("plan-1", false));
    state.add_plan(threshold_plan("plan-2", true));

    const auto instance = select_plan(state, Event{"ev1", {{"NTD", 0.8}}, "test", 0, 0});
    REQUIRE(instance.has_value());
    CHECK(instance->plan_name == "plan-2");
}

TEST_CASE("event with no relevant plan selects nothing and is logged dropped") {
    AgentState state = make_agent();
    state.add_plan(threshold_plan("plan-1", false));

    CHECK_FALSE(select_plan(state, Event{"other", {}, "test", 0, 0}).has_value());

    state.pending_events.push_back(Event{"other", {}, "test", 0, 0});
    const TickResult out = run_tick(state, 0);
    REQUIRE(out.records.size() == 1);
    CHECK(out.records[0].kind == "dropped");
}

TEST_CASE("lower rank wins through higher precedence") {
    AgentState state = make_agent();
    PlanSpec plan;
    plan.name = "ranked";
    plan.handled_kind = "ev";
    plan.context = [](const AgentState&, const Payload&) {
        std::vector<Payload> bindings;
        bindings.push_back({{"rank", std::int64_t{6}}, {"tag", std::string("worse")}});
        bindings.push_back({{"rank", std::int64_t{3}}, {"tag", std::string("better")}});
        return bindings;
    };
    plan.rank_fn = [](const Payload&, const Payload& b) {
        return static_cast<int>(std::get<std::int64_t>(*find_field(b, "rank")));
    };
    state.add_plan(plan);

    const auto instance = select_plan(state, Event{"ev", {}, "test", 0, 0});
    REQUIRE(instance.has_value());
    CHECK(instance->rank == 3);
    CHECK(instance->precedence == 6);
    CHECK(std::get<std::string>(*find_field(instance->binding, "tag")) == "better");
}

TEST_CASE("ties go to declaration order then binding order") {
    AgentState state = make_agent();
    for (const char* name : {"first", "second"}) {
        PlanSpec plan;
        plan.name = name;
        plan.handled_kind = "ev";
        state.add_plan(plan);
    }
    const auto instance = select_plan(state, Event{"ev", {}, "test", 0, 0});
    REQUIRE(instance.has_value());
    CHECK(instance->plan_name == "first");
}

TEST_CASE("rank is clamped to [0, 9] and precedence complements it") {
    AgentState state = make_agent();
    PlanSpec plan;
    plan.name = "wild";
    plan.handled_kind = "ev";
    plan.rank_fn = [](const Payload& p, const Payload&) {
        return static_cast<int>(get_real(p, "raw"));
    };
    state.add_plan(plan);

    for (double raw : {-5.0, 0.0, 4.0, 14.0}) {
        const auto instance = select_plan(state, Event{"ev", {{"raw", raw}}, "test", 0, 0});
        REQUIRE(instance.has_value());
        CHECK(instance->rank >= 0);
        CHECK(instance->rank <= 9);
        CHECK(instance->precedence == 9 - instance->rank);
    }
}

TEST_CASE("empty queue tick is a no-op") {
    AgentState state = make_agent();
    const TickResult out = run_tick(state, 0);
    CHECK(out.events.empty());
    CHECK(out.records.empty());
}

TEST_CASE("intra-tick cascade fires the follow-up plan in the same tick") {
    AgentState state = make_agent();

    PlanSpec first = threshold_plan("plan-2", true);
    first.body = {[](ActionContext& ctx) {
        Payload payload;
        payload.emplace_back("NTD", get_real(ctx.trigger().payload, "NTD"));
        ctx.post("ev2", std::move(payload));
    }};
    state.add_plan(first);

    PlanSpec second;
    second.name = "plan-4";
    second.handled_kind = "ev2";
    bool fired = false;
    second.body = {[&fired](ActionContext&) { fired = true; }};
    state.add_plan(second);

    state.pending_events.push_back(Event{"ev1", {{"NTD", 0.8}}, "test", 0, 0});
    const TickResult out = run_tick(state, 0);
    CHECK(fired);
    REQUIRE(out.events.size() == 2);
    CHECK(out.events[0].kind == "ev1");
    CHECK(out.events[1].kind == "ev2");
}

TEST_CASE("self-reposting plan trips the cycle guard") {
    AgentState state = make_agent();
    PlanSpec loop;
    loop.name = "loop";
    loop.handled_kind = "ev";
    loop.body = {[](ActionContext& ctx) { ctx.post("ev", {}); }};
    state.add_plan(loop);

    state.pending_events.push_back(Event{"ev", {}, "test", 0, 0});
    TickResult out;
    CHECK_THROWS_AS(run_tick(state, 0, out), CycleGuardExceeded);
    CHECK(out.events.size() == kCycleGuardLimit);
}

TEST_CASE("ticks must advance by exactly one") {
    AgentState state = make_agent();
    run_tick(state, 0);
    run_tick(state, 1);
    CHECK_THROWS_AS(run_tick(state, 3), std::invalid_argument);
}

TEST_CASE("identical state and events give identical serialized records") {
    auto build_and_run = []() {
        AgentState state = make_agent();
        state.beliefset("ntd").value_names = {"NTD"};
        PlanSpec plan = threshold_plan("plan-2", true);
        plan.body = {[](ActionContext& ctx) {
            ctx.assert_belief(Belief{"seen", {std::string("last")}, {0.875}, ctx.tick()});
            ctx.set_modes({"A", "B"});
        }};
        state.add_plan(plan);
        assert_belief(state, Belief{"ntd", {std::int64_t{0}}, {0.875}, 0}, std::string("ev1"));
        const TickResult out = run_tick(state, 0);
        std::string text;
        for (const auto& rec : out.records) text += to_line(rec) + "\n";
        return text;
    };
    CHECK(build_and_run() == build_and_run());
    CHECK(build_and_run().find("0.875000") != std::string::npos);
}

TEST_CASE("duplicate plan names are rejected") {
    AgentState state = make_agent();
    state.add_plan(threshold_plan("p", true));
    CHECK_THROWS_AS(state.add_plan(threshold_plan("p", false)), std::invalid_argument);
}

TEST_CASE("selection always returns the first maximum-precedence instance") {
    std::mt19937 gen(2718);
    std::uniform_int_distribution<int> n_plans(1, 5);
    std::uniform_int_distribution<int> n_bindings(0, 4);
    std::uniform_int_distribution<int> ranks(0, 9);
    std::uniform_int_distribution<int> relevant(0, 3);

    for (int trial = 0; trial < 200; ++trial) {
        AgentState state = make_agent();
        // flat mirror of every surviving instance, in enumeration order
        std::vector<std::pair<std::string, int>> expected;

        const int np = n_plans(gen);
        for (int p = 0; p < np; ++p) {
            PlanSpec plan;
            plan.name = "p" + std::to_string(p);
            plan.handled_kind = "ev";
            const bool is_relevant = relevant(gen) > 0;
            plan.relevance = [is_relevant](const Payload&) { return is_relevant; };

            std::vector<int> binding_ranks;
            const int nb = n_bindings(gen);
            for (int b = 0; b < nb; ++b) binding_ranks.push_back(ranks(gen));
            plan.context = [binding_ranks](const AgentState&, const Payload&) {
                std::vector<Payload> out;
                for (int r : binding_ranks) out.push_back({{"r", std::int64_t{r}}});
                return out;
            };
            plan.rank_fn = [](const Payload&, const Payload& b) {
                return static_cast<int>(std::get<std::int64_t>(*find_field(b, "r")));
            };
            state.add_plan(plan);

            if (is_relevant) {
                for (int r : binding_ranks) expected.emplace_back(plan.name, r);
            }
        }

        const auto instance = select_plan(state, Event{"ev", {}, "test", 0, 0});
        if (expected.empty()) {
            CHECK_FALSE(instance.has_value());
            continue;
        }
        auto best = expected.front();
        for (const auto& cand : expected) {
            if (cand.second < best.second) best = cand;
        }
        REQUIRE(instance.has_value());
        CHECK(instance->plan_name == best.first);
        CHECK(instance->rank == best.second);
    }
}
