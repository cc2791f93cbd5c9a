#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "iadsim/event_log.hpp"
#include "iadsim/experiment.hpp"
#include "iadsim/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;

std::vector<double> read_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);
    std::vector<double> sample;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const size_t b = item.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const size_t e = item.find_last_not_of(" \t\r");
            item = item.substr(b, e - b + 1);
            if (item.empty()) continue;
            try {
                sample.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw iadsim::ParseError(line_no, "bad sample value '" + item + "'");
            }
        }
    }
    return sample;
}

void write_cdf_csv(const std::string& path, const std::vector<std::array<double, 3>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "x,F_emp,F_ref\n";
    for (const auto& row : rows) {
        out << iadsim::format_real(row[0]) << ',' << iadsim::format_real(row[1]) << ','
            << iadsim::format_real(row[2]) << '\n';
    }
}

void print_ks(const iadsim::stats::KsResult& ks) {
    std::cout << "d_stat=" << iadsim::format_real(ks.d_stat) << '\n'
              << "n=" << ks.n << '\n'
              << "alpha=" << iadsim::format_real(ks.alpha) << '\n'
              << "critical=" << iadsim::format_real(ks.critical) << '\n'
              << "reject=" << (ks.reject ? 1 : 0) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"air-defense C2 agents: simulator, NTD experiments, KS evaluation"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::string dist_text;
    std::string ref_text = "t:2";
    std::string sample_path;
    std::string log_path;
    std::string rules_path;
    std::string csv_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int n = 500;
    int ticks = 0;
    double alpha = 0.05;

    CLI::App* simulate = app.add_subcommand("simulate", "run a scenario and write the event log");
    simulate->add_option("--scenario", scenario_path, "scenario file")->required();
    simulate->add_option("--seed", seed, "override the scenario seed")
        ->each([&](const std::string&) { seed_given = true; });
    simulate->add_option("--ticks", ticks, "override simulation_time");
    simulate->add_option("--out", out_dir, "output directory")->required();

    CLI::App* ntd_eval = app.add_subcommand("ntd-eval", "count-distribution NTD experiment");
    ntd_eval->add_option("--dist", dist_text, "source family:params, e.g. normal:20,10")->required();
    ntd_eval->add_option("--n", n, "sample size")->required();
    ntd_eval->add_option("--seed", seed, "generator seed")->required();
    ntd_eval->add_option("--csv", csv_path, "write (x, F_emp, F_ref) pairs for plotting");

    CLI::App* ks_test = app.add_subcommand("ks-test", "one-sample KS test from a CSV sample");
    ks_test->add_option("--sample", sample_path, "CSV of sample values")->required();
    ks_test->add_option("--ref", ref_text, "reference family:params, e.g. t:2")->required();
    ks_test->add_option("--alpha", alpha, "false-alarm probability");
    ks_test->add_option("--csv", csv_path, "write (x, F_emp, F_ref) pairs for plotting");

    CLI::App* allocate = app.add_subcommand("allocate", "one-shot prioritization and allocation");
    allocate->add_option("--scenario", scenario_path, "scenario file")->required();

    CLI::App* verify = app.add_subcommand("verify-goals", "validate a log's mode trace");
    verify->add_option("--log", log_path, "event log")->required();
    verify->add_option("--rules", rules_path, "goal inference rules file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const iadsim::sim::Scenario scn = iadsim::sim::load_scenario(scenario_path);
            std::vector<iadsim::LogRecord> partial;
            iadsim::sim::RunResult result;
            std::filesystem::create_directories(out_dir);
            const std::string log_file = out_dir + "/events.log";
            try {
                result = iadsim::sim::run_simulation(
                    scn, seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt,
                    ticks > 0 ? std::optional<int>(ticks) : std::nullopt, &partial);
            } catch (const iadsim::CycleGuardExceeded& e) {
                iadsim::write_log_file(log_file, partial);
                std::cerr << "error: " << e.what() << " (partial log written)\n";
                return kExitViolation;
            }
            iadsim::write_log_file(log_file, result.log);
            std::cout << result.report.to_text();
            std::cout << "assignments=" << result.assignments.size() << '\n';
            std::cout << "violations=" << result.validation.violations.size() << '\n';
            std::cout << "log=" << log_file << '\n';
            return result.ok() ? kExitOk : kExitViolation;
        }

        if (ntd_eval->parsed()) {
            const auto spec = iadsim::stats::parse_distribution_spec(dist_text);
            const auto report = iadsim::stats::run_ntd_experiment(spec, n, seed);
            std::cout << report.to_text();
            if (!csv_path.empty()) {
                const auto counts = iadsim::stats::generate_counts(spec, n, seed);
                write_cdf_csv(csv_path,
                              iadsim::stats::cdf_table(iadsim::stats::ntd_series_signed(counts),
                                                       iadsim::stats::ReferenceDist::student_t(2.0)));
            }
            return kExitOk;
        }

        if (ks_test->parsed()) {
            const auto ref = iadsim::stats::parse_reference(ref_text);
            const std::vector<double> sample = read_sample_csv(sample_path);
            const auto ks = iadsim::stats::ks_statistic(sample, ref, alpha);
            print_ks(ks);
            if (!csv_path.empty()) {
                write_cdf_csv(csv_path, iadsim::stats::cdf_table(sample, ref));
            }
            return kExitOk;
        }

        if (allocate->parsed()) {
            const iadsim::sim::Scenario scn = iadsim::sim::load_scenario(scenario_path);
            const auto priority =
                iadsim::lccc::prioritize_clusters(scn.clusters, scn.vavps, scn.lccc);
            const auto alloc =
                iadsim::lccc::allocate_interceptors(priority.ordered, scn.interceptors);
            std::cout << "instances=" << priority.enumerated.size() << '\n';
            for (std::size_t i = 0; i < priority.ordered.size(); ++i) {
                const auto& e = priority.ordered[i];
                std::cout << "priority" << i << "=" << e.cluster.id
                          << ";d1=" << iadsim::format_real(e.d1)
                          << ";label=" << iadsim::lccc::to_string(e.label)
                          << ";mission=" << iadsim::lccc::to_string(e.cluster.mission)
                          << ";rank=" << e.rank.rank
                          << ";precedence=" << e.rank.precedence() << '\n';
            }
            for (const auto& a : alloc.assignments) {
                std::cout << "assign " << a.target_id << "=" << a.interceptor_id
                          << ";cluster=" << a.cluster_id << '\n';
            }
            for (const auto& t : alloc.unassigned) {
                std::cout << "unassigned=" << t << '\n';
            }
            return kExitOk;
        }

        if (verify->parsed()) {
            const auto log = iadsim::parse_log_file(log_path);
            const auto rules = iadsim::goals::parse_rules_file(rules_path);
            const auto trace = iadsim::sim::extract_mode_trace(log);
            const auto report =
                iadsim::goals::validate_trace(trace, rules.rules, rules.forbidden);
            std::cout << "ticks=" << trace.size() << '\n';
            std::cout << "violations=" << report.violations.size() << '\n';
            for (const auto& v : report.violations) {
                std::cout << "violation tick=" << v.tick << ";kind=" << v.kind
                          << ";detail=" << v.detail << '\n';
            }
            if (report.first_offending_tick) {
                std::cout << "first_offending_tick=" << *report.first_offending_tick << '\n';
            }
            return report.valid() ? kExitOk : kExitViolation;
        }
    } catch (const iadsim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const iadsim::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    } catch (const iadsim::InvalidSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitOk;
}
