// Serial vs OpenMP timings for the batch layers: seed batches of the NTD
// experiment, KS false-alarm calibration, and repeated scenario runs.
#include <chrono>
#include <cstdio>
#include <string>

#include "iadsim/experiment.hpp"
#include "iadsim/simulator.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    using iadsim::stats::Execution;

    int seeds = 40;
    int trials = 400;
    int runs = 60;
    std::string scenario_path = "scenarios/baseline.scn";
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        if (key == "--seeds") seeds = std::stoi(argv[i + 1]);
        else if (key == "--trials") trials = std::stoi(argv[i + 1]);
        else if (key == "--runs") runs = std::stoi(argv[i + 1]);
        else if (key == "--scenario") scenario_path = argv[i + 1];
    }

#if defined(_OPENMP)
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both columns run serial code\n");
#endif

    const auto spec = iadsim::stats::DistributionSpec::normal(20.0, 10.0);
    std::vector<iadsim::stats::ExperimentReport> a, b;
    report("ntd seed batch",
           time_ms([&] { a = run_seed_batch(spec, 500, 1, seeds, {}, Execution::Serial); }),
           time_ms([&] { b = run_seed_batch(spec, 500, 1, seeds, {}, Execution::Parallel); }));
    if (a.size() != b.size()) std::printf("  MISMATCH in batch size\n");

    const auto ref = iadsim::stats::ReferenceDist::student_t(2.0);
    double rs = 0.0, rp = 0.0;
    report("ks calibration",
           time_ms([&] { rs = reject_rate(ref, 500, trials, 0.05, 7, Execution::Serial); }),
           time_ms([&] { rp = reject_rate(ref, 500, trials, 0.05, 7, Execution::Parallel); }));
    if (rs != rp) std::printf("  MISMATCH: serial %f vs parallel %f\n", rs, rp);

    try {
        const auto scn = iadsim::sim::load_scenario(scenario_path);
        std::vector<iadsim::sim::RunResult> s, p;
        report("scenario batch",
               time_ms([&] { s = run_many(scn, 1, runs, Execution::Serial); }),
               time_ms([&] { p = run_many(scn, 1, runs, Execution::Parallel); }));
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (iadsim::serialize_log(s[i].log) != iadsim::serialize_log(p[i].log)) {
                std::printf("  MISMATCH in run %zu\n", i);
            }
        }
    } catch (const std::exception& e) {
        std::printf("scenario batch skipped: %s\n", e.what());
    }
    return 0;
}
