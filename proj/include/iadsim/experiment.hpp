#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "iadsim/distributions.hpp"
#include "iadsim/ks_test.hpp"
#include "iadsim/radar_agent.hpp"

namespace iadsim::stats {

// Absolute NTD over consecutive counts; element i = ntd(counts[i], counts[i+1]).
std::vector<double> ntd_series(const std::vector<long>& counts);

// Shape-check variants: the signed difference ratio (for symmetric
// references) and the raw consecutive-count ratio (for positive-support
// references, whose fitted parameters center near 1).
std::vector<double> ntd_series_signed(const std::vector<long>& counts);
std::vector<double> count_ratio_series(const std::vector<long>& counts);

struct ExperimentReport {
    std::string source;
    int total = 0;           // number of NTD samples (= count of classified ticks)
    int jamming_count = 0;   // fh_count + off_count
    int fh_count = 0;
    int off_count = 0;
    double jamming_fraction = 0.0;
    double fh_fraction = 0.0;
    double off_fraction = 0.0;
    std::vector<std::pair<std::string, KsResult>> ks_against;  // deterministic order
    std::uint64_t seed = 0;

    const KsResult* ks(const std::string& name) const;
    std::string to_text() const;  // key=value lines
};

// Tallies produced by classifying one NTD series.
ExperimentReport classify_series(const std::vector<double>& abs_ntd, const srdr::SrdrConfig& cfg);

// Generates counts, classifies the NTD series, and attaches the KS distances:
// always student_t2 and normal_moment_fit on the signed series, plus the
// fitted reference for the source family (both parameter modes) on the ratio
// series.
ExperimentReport run_ntd_experiment(const DistributionSpec& spec, int n, std::uint64_t seed,
                                    const srdr::SrdrConfig& cfg = {});

enum class Execution { Serial, Parallel };

// Batch of independent experiments for seeds base_seed .. base_seed+count-1,
// returned in seed order. The parallel path distributes seeds over OpenMP
// threads and is output-identical to the serial one.
std::vector<ExperimentReport> run_seed_batch(const DistributionSpec& spec, int n,
                                             std::uint64_t base_seed, int count,
                                             const srdr::SrdrConfig& cfg = {},
                                             Execution exec = Execution::Serial);

// False-alarm calibration: draws `trials` samples of size n from the
// reference itself and returns the rejection rate at the given alpha.
double reject_rate(const ReferenceDist& dist, int n, int trials, double alpha,
                   std::uint64_t base_seed, Execution exec = Execution::Serial);

// (x, F_emp(x), F_ref(x)) rows for plotting.
std::vector<std::array<double, 3>> cdf_table(std::vector<double> sample,
                                             const ReferenceDist& dist);

}  // namespace iadsim::stats
