#include "iadsim/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "iadsim/common.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace iadsim::stats {

std::vector<double> ntd_series(const std::vector<long>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("ntd series needs at least 2 counts");
    std::vector<double> out;
    out.reserve(counts.size() - 1);
    for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        out.push_back(srdr::compute_ntd(counts[i], counts[i + 1]));
    }
    return out;
}

std::vector<double> ntd_series_signed(const std::vector<long>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("ntd series needs at least 2 counts");
    std::vector<double> out;
    out.reserve(counts.size() - 1);
    for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        out.push_back(static_cast<double>(counts[i] - counts[i + 1]) /
                      static_cast<double>(counts[i]));
    }
    return out;
}

std::vector<double> count_ratio_series(const std::vector<long>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("ratio series needs at least 2 counts");
    std::vector<double> out;
    out.reserve(counts.size() - 1);
    for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        out.push_back(static_cast<double>(counts[i + 1]) / static_cast<double>(counts[i]));
    }
    return out;
}

const KsResult* ExperimentReport::ks(const std::string& name) const {
    for (const auto& [key, result] : ks_against) {
        if (key == name) return &result;
    }
    return nullptr;
}

std::string ExperimentReport::to_text() const {
    std::ostringstream out;
    out << "source=" << source << '\n';
    out << "seed=" << seed << '\n';
    out << "total=" << total << '\n';
    out << "jamming_count=" << jamming_count << '\n';
    out << "fh_count=" << fh_count << '\n';
    out << "off_count=" << off_count << '\n';
    out << "jamming_fraction=" << format_real(jamming_fraction) << '\n';
    out << "fh_fraction=" << format_real(fh_fraction) << '\n';
    out << "off_fraction=" << format_real(off_fraction) << '\n';
    for (const auto& [key, result] : ks_against) {
        out << "ks_" << key << "=" << format_real(result.d_stat) << '\n';
        out << "ks_" << key << "_reject=" << (result.reject ? 1 : 0) << '\n';
    }
    return out.str();
}

ExperimentReport classify_series(const std::vector<double>& abs_ntd,
                                 const srdr::SrdrConfig& cfg) {
    ExperimentReport report;
    report.total = static_cast<int>(abs_ntd.size());
    for (double v : abs_ntd) {
        switch (srdr::classify_ntd(v, cfg)) {
            case srdr::NtdAction::NoAction: break;
            case srdr::NtdAction::FrequencyHopping: ++report.fh_count; break;
            case srdr::NtdAction::SwitchOff: ++report.off_count; break;
        }
    }
    report.jamming_count = report.fh_count + report.off_count;
    if (report.total > 0) {
        const auto n = static_cast<double>(report.total);
        report.jamming_fraction = report.jamming_count / n;
        report.fh_fraction = report.fh_count / n;
        report.off_fraction = report.off_count / n;
    }
    return report;
}

namespace {

ReferenceDist moment_fit_normal(const std::vector<double>& sample) {
    const double mean =
        std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
    double ss = 0.0;
    for (double v : sample) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(sample.size()));
    if (sd <= 0.0) sd = 1e-12;
    return ReferenceDist::normal(mean, sd);
}

}  // namespace

ExperimentReport run_ntd_experiment(const DistributionSpec& spec, int n, std::uint64_t seed,
                                    const srdr::SrdrConfig& cfg) {
    const std::vector<long> counts = generate_counts(spec, n, seed);
    const std::vector<double> abs_ntd = ntd_series(counts);
    const std::vector<double> signed_ntd = ntd_series_signed(counts);
    const std::vector<double> ratio = count_ratio_series(counts);

    ExperimentReport report = classify_series(abs_ntd, cfg);
    report.source = spec.name();
    report.seed = seed;

    report.ks_against.emplace_back("student_t2",
                                   ks_statistic(signed_ntd, ReferenceDist::student_t(2.0)));
    report.ks_against.emplace_back("normal_moment_fit",
                                   ks_statistic(signed_ntd, moment_fit_normal(signed_ntd)));

    using PM = ReferenceDist::ParamMode;
    switch (spec.family) {
        case DistributionSpec::Family::Normal:
            break;  // its fitted reference is the t(2) already reported
        case DistributionSpec::Family::Triangular:
            report.ks_against.emplace_back(
                "gamma_scale", ks_statistic(ratio, ReferenceDist::gamma(12.06, 0.08, PM::Scale)));
            report.ks_against.emplace_back(
                "gamma_rate", ks_statistic(ratio, ReferenceDist::gamma(12.06, 0.08, PM::Rate)));
            break;
        case DistributionSpec::Family::Uniform:
            report.ks_against.emplace_back(
                "gamma_scale", ks_statistic(ratio, ReferenceDist::gamma(4.90, 0.22, PM::Scale)));
            report.ks_against.emplace_back(
                "gamma_rate", ks_statistic(ratio, ReferenceDist::gamma(4.90, 0.22, PM::Rate)));
            break;
        case DistributionSpec::Family::Exponential:
            report.ks_against.emplace_back(
                "laplace_rate", ks_statistic(ratio, ReferenceDist::laplace(185.71, 1.0, PM::Rate)));
            report.ks_against.emplace_back(
                "laplace_scale",
                ks_statistic(ratio, ReferenceDist::laplace(185.71, 1.0, PM::Scale)));
            break;
    }
    return report;
}

std::vector<ExperimentReport> run_seed_batch(const DistributionSpec& spec, int n,
                                             std::uint64_t base_seed, int count,
                                             const srdr::SrdrConfig& cfg, Execution exec) {
    if (count < 0) throw std::invalid_argument("negative batch size");
    std::vector<ExperimentReport> reports(static_cast<std::size_t>(count));
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) {
            reports[static_cast<std::size_t>(i)] =
                run_ntd_experiment(spec, n, base_seed + static_cast<std::uint64_t>(i), cfg);
        }
    } else {
        for (int i = 0; i < count; ++i) {
            reports[static_cast<std::size_t>(i)] =
                run_ntd_experiment(spec, n, base_seed + static_cast<std::uint64_t>(i), cfg);
        }
    }
    return reports;
}

double reject_rate(const ReferenceDist& dist, int n, int trials, double alpha,
                   std::uint64_t base_seed, Execution exec) {
    if (n < 1 || trials < 1) throw std::invalid_argument("reject_rate needs n, trials >= 1");
    long rejects = 0;

    auto run_trial = [&](int t) {
        Rng rng(mix_seed(base_seed, static_cast<std::uint64_t>(t)));
        std::vector<double> sample(static_cast<std::size_t>(n));
        for (double& v : sample) v = sample_reference(dist, rng);
        return ks_statistic(std::move(sample), dist, alpha).reject ? 1 : 0;
    };

    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic) reduction(+ : rejects)
        for (int t = 0; t < trials; ++t) rejects += run_trial(t);
    } else {
        for (int t = 0; t < trials; ++t) rejects += run_trial(t);
    }
    return static_cast<double>(rejects) / static_cast<double>(trials);
}

std::vector<std::array<double, 3>> cdf_table(std::vector<double> sample,
                                             const ReferenceDist& dist) {
    if (sample.empty()) throw EmptySample();
    std::sort(sample.begin(), sample.end());
    std::vector<std::array<double, 3>> rows;
    rows.reserve(sample.size());
    const auto n = static_cast<double>(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        rows.push_back({sample[i], static_cast<double>(i + 1) / n,
                        reference_cdf(dist, sample[i])});
    }
    return rows;
}

}  // namespace iadsim::stats
