#include "iadsim/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "iadsim/rng.hpp"

namespace iadsim::sim {

namespace {

long draw_count(const stats::DistributionSpec& spec, stats::Rng& rng) {
    for (long rejected = 0; rejected <= 1000000; ++rejected) {
        const long c = std::lround(spec.sample(rng));
        if (c >= 1) return c;
    }
    throw InvalidSpec(spec.name() + " cannot produce counts >= 1");
}

}  // namespace

std::vector<std::pair<int, goals::AtomSet>> extract_mode_trace(
    const std::vector<LogRecord>& log, const std::string& agent) {
    std::vector<std::pair<int, goals::AtomSet>> trace;
    for (const LogRecord& rec : log) {
        if (rec.kind != "mode" || rec.agent != agent) continue;
        goals::AtomSet atoms;
        for (const auto& [k, v] : rec.fields) {
            if (k != "modes") continue;
            size_t pos = 0;
            while (pos <= v.size()) {
                size_t comma = v.find(',', pos);
                if (comma == std::string::npos) comma = v.size();
                const std::string atom = v.substr(pos, comma - pos);
                if (!atom.empty()) atoms.insert(atom);
                pos = comma + 1;
            }
        }
        if (!trace.empty() && trace.back().first == rec.tick) {
            trace.back().second = std::move(atoms);  // last mode of the tick wins
        } else {
            trace.emplace_back(rec.tick, std::move(atoms));
        }
    }
    return trace;
}

RunResult run_simulation(const Scenario& scn, std::optional<std::uint64_t> seed_override,
                         std::optional<int> ticks_override,
                         std::vector<LogRecord>* partial_log) {
    Scenario effective = scn;
    if (seed_override) effective.seed = *seed_override;
    if (ticks_override) effective.simulation_time = *ticks_override;
    effective.validate();

    RunResult result;
    result.seed = effective.seed;

    stats::Rng rng(effective.seed);
    srdr::RadarAgent radar(effective.srdr);
    lccc::ThreatAgent threat(effective.lccc);

    std::vector<long> counts;
    counts.reserve(static_cast<std::size_t>(effective.simulation_time));

    try {
        for (int tick = 0; tick < effective.simulation_time; ++tick) {
            long count = draw_count(effective.detection, rng);
            double factor = 1.0;
            if (effective.in_episode(tick, &factor)) {
                count = static_cast<long>(
                    std::floor(static_cast<double>(count) * factor));
                if (count < 0) count = 0;
            }
            counts.push_back(count);

            // radar first: detection precedes assessment
            srdr::RadarAgent::StepResult r = radar.step(srdr::RadarObservation{tick, count});
            for (LogRecord& rec : r.records) result.log.push_back(std::move(rec));

            const bool lccc_turn = (tick % effective.lccc_cadence) == 0;
            std::vector<lccc::Cluster> visible;
            if (lccc_turn) {
                visible = effective.clusters;
                for (lccc::Cluster& c : visible) c.location = effective.cluster_location(c, tick);
            }
            lccc::ThreatAgent::StepResult t =
                threat.step(visible, effective.vavps, effective.interceptors, tick);
            for (LogRecord& rec : t.records) result.log.push_back(std::move(rec));
            for (lccc::Assignment& a : t.allocation.assignments) {
                result.assignments.push_back(std::move(a));
            }
        }
    } catch (const CycleGuardExceeded&) {
        if (partial_log) *partial_log = std::move(result.log);
        throw;
    }

    if (counts.size() >= 2) {
        result.report = stats::classify_series(stats::ntd_series(counts), effective.srdr);
        const std::vector<double> signed_ntd = stats::ntd_series_signed(counts);
        result.report.ks_against.emplace_back(
            "student_t2", stats::ks_statistic(signed_ntd, stats::ReferenceDist::student_t(2.0)));
    }
    result.report.source = effective.detection.name();
    result.report.seed = effective.seed;

    result.mode_trace = extract_mode_trace(result.log);
    const goals::RuleSet& rules =
        effective.gir.rules.empty() ? goals::radar_mode_rules() : effective.gir;
    result.validation = goals::validate_trace(result.mode_trace, rules.rules, rules.forbidden);
    for (const goals::TraceViolation& v : result.validation.violations) {
        result.log.push_back(LogRecord{
            v.tick, "radar", "violation", {{"kind", v.kind}, {"detail", v.detail}}});
    }
    return result;
}

std::vector<RunResult> run_many(const Scenario& scn, std::uint64_t base_seed, int count,
                                stats::Execution exec) {
    std::vector<RunResult> results(static_cast<std::size_t>(count));
    if (exec == stats::Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) {
            results[static_cast<std::size_t>(i)] =
                run_simulation(scn, base_seed + static_cast<std::uint64_t>(i));
        }
    } else {
        for (int i = 0; i < count; ++i) {
            results[static_cast<std::size_t>(i)] =
                run_simulation(scn, base_seed + static_cast<std::uint64_t>(i));
        }
    }
    return results;
}

}  // namespace iadsim::sim
