#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iadsim/rng.hpp"

namespace iadsim::stats {

// Source families for the detection-count generator.
struct DistributionSpec {
    enum class Family { Normal, Triangular, Uniform, Exponential };

    Family family = Family::Normal;
    // Normal:      p1 = mu,    p2 = sigma
    // Triangular:  p1 = mode,  p2 = low,   p3 = high
    // Uniform:     p1 = low,   p2 = high
    // Exponential: p1 = shift, p2 = mean of the exponential part
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;

    static DistributionSpec normal(double mu, double sigma);
    static DistributionSpec triangular(double mode, double low, double high);
    static DistributionSpec uniform(double low, double high);
    static DistributionSpec exponential(double shift, double mean);

    void validate() const;  // throws InvalidSpec
    double sample(Rng& rng) const;
    std::string name() const;
};

// "normal:20,10" | "triangular:20,10,30" | "uniform:10,30" | "exponential:10,20"
DistributionSpec parse_distribution_spec(const std::string& text);

// n integer counts: draw, round to nearest, redraw anything below 1 so the
// NTD denominator stays positive. Same (spec, n, seed) gives the same output.
std::vector<long> generate_counts(const DistributionSpec& spec, int n, std::uint64_t seed);

// Reference families the NTD series is tested against.
struct ReferenceDist {
    enum class Family { StudentT, Gamma, Laplace, Normal };
    // Gamma's beta and Laplace's lambda are ambiguous in the source material;
    // both readings stay available.
    enum class ParamMode { Scale, Rate };

    Family family = Family::StudentT;
    double p1 = 2.0;  // StudentT: nu | Gamma: alpha | Laplace: lambda | Normal: mu
    double p2 = 0.0;  // Gamma: beta | Laplace: mu | Normal: sigma
    ParamMode mode = ParamMode::Scale;

    static ReferenceDist student_t(double nu);
    static ReferenceDist gamma(double alpha, double beta, ParamMode mode = ParamMode::Scale);
    static ReferenceDist laplace(double lambda, double mu, ParamMode mode = ParamMode::Rate);
    static ReferenceDist normal(double mu, double sigma);

    void validate() const;
    std::string name() const;
};

// "t:2" | "gamma:12.06,0.08[,rate]" | "laplace:185.71,1.0[,scale]" | "normal:0,1"
ReferenceDist parse_reference(const std::string& text);

// CDF of the reference at x. StudentT(2) and StudentT(1) use closed forms,
// Gamma goes through the regularized lower incomplete gamma, Laplace and
// Normal are closed-form (Normal via erf).
double reference_cdf(const ReferenceDist& dist, double x);

// One variate from the reference, for false-alarm calibration runs.
double sample_reference(const ReferenceDist& dist, Rng& rng);

// Regularized lower incomplete gamma P(a, x): series expansion for
// x < a + 1, Lentz continued fraction otherwise. Relative error <= 1e-10.
double regularized_gamma_p(double a, double x);

}  // namespace iadsim::stats
