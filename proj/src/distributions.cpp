#include "iadsim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iadsim/common.hpp"

namespace iadsim::stats {

DistributionSpec DistributionSpec::normal(double mu, double sigma) {
    return {Family::Normal, mu, sigma, 0.0};
}
DistributionSpec DistributionSpec::triangular(double mode, double low, double high) {
    return {Family::Triangular, mode, low, high};
}
DistributionSpec DistributionSpec::uniform(double low, double high) {
    return {Family::Uniform, low, high, 0.0};
}
DistributionSpec DistributionSpec::exponential(double shift, double mean) {
    return {Family::Exponential, shift, mean, 0.0};
}

void DistributionSpec::validate() const {
    switch (family) {
        case Family::Normal:
            if (p2 <= 0.0) throw InvalidSpec("normal: sigma must be > 0");
            break;
        case Family::Triangular:
            if (!(p2 < p3)) throw InvalidSpec("triangular: low must be < high");
            if (p1 < p2 || p1 > p3) throw InvalidSpec("triangular: mode must lie in [low, high]");
            break;
        case Family::Uniform:
            if (!(p1 < p2)) throw InvalidSpec("uniform: low must be < high");
            break;
        case Family::Exponential:
            if (p2 <= 0.0) throw InvalidSpec("exponential: mean must be > 0");
            break;
    }
}

double DistributionSpec::sample(Rng& rng) const {
    switch (family) {
        case Family::Normal:
            return p1 + p2 * rng.normal();
        case Family::Triangular: {
            // inverse CDF; p1 = mode, p2 = low, p3 = high
            const double u = rng.next_double();
            const double span = p3 - p2;
            const double cut = (p1 - p2) / span;
            if (u < cut) return p2 + std::sqrt(u * span * (p1 - p2));
            return p3 - std::sqrt((1.0 - u) * span * (p3 - p1));
        }
        case Family::Uniform:
            return p1 + (p2 - p1) * rng.next_double();
        case Family::Exponential:
            return p1 - p2 * std::log(rng.next_open());
    }
    return 0.0;
}

std::string DistributionSpec::name() const {
    std::ostringstream out;
    switch (family) {
        case Family::Normal: out << "normal(" << p1 << "," << p2 << ")"; break;
        case Family::Triangular: out << "triangular(" << p1 << "," << p2 << "," << p3 << ")"; break;
        case Family::Uniform: out << "uniform(" << p1 << "," << p2 << ")"; break;
        case Family::Exponential: out << "exponential(" << p1 << "," << p2 << ")"; break;
    }
    return out.str();
}

namespace {

std::vector<double> split_params(const std::string& s, std::string* trailing_word = nullptr) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trailing_word) {
            // a non-numeric last token selects the parameter mode
            try {
                size_t pos = 0;
                double v = std::stod(item, &pos);
                while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
                    ++pos;
                if (pos != item.size()) throw std::invalid_argument(item);
                out.push_back(v);
                continue;
            } catch (const std::exception&) {
                *trailing_word = item;
                continue;
            }
        }
        out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

DistributionSpec parse_distribution_spec(const std::string& text) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos) throw InvalidSpec("expected family:params, got '" + text + "'");
    const std::string family = text.substr(0, colon);
    std::vector<double> p;
    try {
        p = split_params(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw InvalidSpec("bad parameter list in '" + text + "'");
    }

    DistributionSpec spec;
    if (family == "normal" && p.size() == 2) {
        spec = DistributionSpec::normal(p[0], p[1]);
    } else if (family == "triangular" && p.size() == 3) {
        spec = DistributionSpec::triangular(p[0], p[1], p[2]);
    } else if (family == "uniform" && p.size() == 2) {
        spec = DistributionSpec::uniform(p[0], p[1]);
    } else if (family == "exponential" && p.size() == 2) {
        spec = DistributionSpec::exponential(p[0], p[1]);
    } else {
        throw InvalidSpec("unknown distribution '" + text + "'");
    }
    spec.validate();
    return spec;
}

std::vector<long> generate_counts(const DistributionSpec& spec, int n, std::uint64_t seed) {
    spec.validate();
    if (n < 2) throw InvalidSpec("count generation needs n >= 2");
    Rng rng(seed);
    std::vector<long> counts;
    counts.reserve(static_cast<std::size_t>(n));
    long rejected = 0;
    while (counts.size() < static_cast<std::size_t>(n)) {
        const long c = std::lround(spec.sample(rng));
        if (c >= 1) {
            counts.push_back(c);
            rejected = 0;
        } else if (++rejected > 1000000) {
            throw InvalidSpec(spec.name() + " cannot produce counts >= 1");
        }
    }
    return counts;
}

ReferenceDist ReferenceDist::student_t(double nu) {
    return {Family::StudentT, nu, 0.0, ParamMode::Scale};
}
ReferenceDist ReferenceDist::gamma(double alpha, double beta, ParamMode mode) {
    return {Family::Gamma, alpha, beta, mode};
}
ReferenceDist ReferenceDist::laplace(double lambda, double mu, ParamMode mode) {
    return {Family::Laplace, lambda, mu, mode};
}
ReferenceDist ReferenceDist::normal(double mu, double sigma) {
    return {Family::Normal, mu, sigma, ParamMode::Scale};
}

void ReferenceDist::validate() const {
    switch (family) {
        case Family::StudentT:
            if (p1 != 1.0 && p1 != 2.0) {
                throw InvalidSpec("student-t CDF implemented for nu in {1, 2}");
            }
            break;
        case Family::Gamma:
            if (p1 <= 0.0 || p2 <= 0.0) throw InvalidSpec("gamma: alpha and beta must be > 0");
            break;
        case Family::Laplace:
            if (p1 <= 0.0) throw InvalidSpec("laplace: lambda must be > 0");
            break;
        case Family::Normal:
            if (p2 <= 0.0) throw InvalidSpec("normal: sigma must be > 0");
            break;
    }
}

std::string ReferenceDist::name() const {
    std::ostringstream out;
    const char* mode_word = mode == ParamMode::Scale ? "scale" : "rate";
    switch (family) {
        case Family::StudentT: out << "student_t(" << p1 << ")"; break;
        case Family::Gamma: out << "gamma(" << p1 << "," << p2 << "," << mode_word << ")"; break;
        case Family::Laplace: out << "laplace(" << p1 << "," << p2 << "," << mode_word << ")"; break;
        case Family::Normal: out << "normal(" << p1 << "," << p2 << ")"; break;
    }
    return out.str();
}

ReferenceDist parse_reference(const std::string& text) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos) throw InvalidSpec("expected family:params, got '" + text + "'");
    const std::string family = text.substr(0, colon);
    std::string mode_word;
    std::vector<double> p;
    try {
        p = split_params(text.substr(colon + 1), &mode_word);
    } catch (const std::exception&) {
        throw InvalidSpec("bad parameter list in '" + text + "'");
    }

    ReferenceDist::ParamMode mode = ReferenceDist::ParamMode::Scale;
    if (!mode_word.empty()) {
        if (mode_word == "rate") {
            mode = ReferenceDist::ParamMode::Rate;
        } else if (mode_word != "scale") {
            throw InvalidSpec("unknown parameter mode '" + mode_word + "'");
        }
    }

    ReferenceDist dist;
    if ((family == "t" || family == "student_t") && p.size() == 1) {
        dist = ReferenceDist::student_t(p[0]);
    } else if (family == "gamma" && p.size() == 2) {
        dist = ReferenceDist::gamma(p[0], p[1], mode);
    } else if (family == "laplace" && p.size() == 2) {
        dist = ReferenceDist::laplace(p[0], p[1],
                                      mode_word.empty() ? ReferenceDist::ParamMode::Rate : mode);
    } else if (family == "normal" && p.size() == 2) {
        dist = ReferenceDist::normal(p[0], p[1]);
    } else {
        throw InvalidSpec("unknown reference '" + text + "'");
    }
    dist.validate();
    return dist;
}

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0) throw InvalidSpec("regularized_gamma_p: a must be > 0");
    if (x < 0.0) throw InvalidSpec("regularized_gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;

    constexpr double eps = 1e-14;
    constexpr int max_iter = 500;
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);

    if (x < a + 1.0) {
        // series: P(a,x) = x^a e^-x / Gamma(a) * sum x^n / (a (a+1) ... (a+n))
        double term = 1.0 / a;
        double sum = term;
        double denom = a;
        for (int i = 0; i < max_iter; ++i) {
            denom += 1.0;
            term *= x / denom;
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps) break;
        }
        return std::exp(log_prefactor) * sum;
    }

    // Lentz continued fraction for Q(a,x)
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    return 1.0 - std::exp(log_prefactor) * h;
}

namespace {

double laplace_scale(const ReferenceDist& d) {
    return d.mode == ReferenceDist::ParamMode::Rate ? 1.0 / d.p1 : d.p1;
}

double gamma_scale(const ReferenceDist& d) {
    return d.mode == ReferenceDist::ParamMode::Scale ? d.p2 : 1.0 / d.p2;
}

// Marsaglia-Tsang gamma sampler, alpha >= 1; boosted for alpha < 1
double sample_gamma(double alpha, Rng& rng) {
    if (alpha < 1.0) {
        const double u = rng.next_open();
        return sample_gamma(alpha + 1.0, rng) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

double reference_cdf(const ReferenceDist& dist, double x) {
    dist.validate();
    switch (dist.family) {
        case ReferenceDist::Family::StudentT:
            if (dist.p1 == 2.0) return 0.5 + x / (2.0 * std::sqrt(2.0 + x * x));
            return 0.5 + std::atan(x) / M_PI;  // nu = 1
        case ReferenceDist::Family::Gamma:
            if (x <= 0.0) return 0.0;
            return regularized_gamma_p(dist.p1, x / gamma_scale(dist));
        case ReferenceDist::Family::Laplace: {
            const double b = laplace_scale(dist);
            const double mu = dist.p2;
            if (x < mu) return 0.5 * std::exp((x - mu) / b);
            return 1.0 - 0.5 * std::exp(-(x - mu) / b);
        }
        case ReferenceDist::Family::Normal: {
            const double z = (x - dist.p1) / (dist.p2 * std::sqrt(2.0));
            return 0.5 * (1.0 + std::erf(z));
        }
    }
    return 0.0;
}

double sample_reference(const ReferenceDist& dist, Rng& rng) {
    dist.validate();
    switch (dist.family) {
        case ReferenceDist::Family::StudentT: {
            const double u = rng.next_open();
            if (dist.p1 == 2.0) {
                // inverse of F(x) = 1/2 + x / (2 sqrt(2 + x^2))
                const double s = 2.0 * u - 1.0;
                return s * std::sqrt(2.0) / std::sqrt(std::max(1.0 - s * s, 1e-300));
            }
            return std::tan(M_PI * (u - 0.5));  // nu = 1
        }
        case ReferenceDist::Family::Gamma:
            return sample_gamma(dist.p1, rng) * gamma_scale(dist);
        case ReferenceDist::Family::Laplace: {
            const double b = laplace_scale(dist);
            const double u = rng.next_open();
            if (u < 0.5) return dist.p2 + b * std::log(2.0 * u);
            return dist.p2 - b * std::log(2.0 * (1.0 - u));
        }
        case ReferenceDist::Family::Normal:
            return dist.p1 + dist.p2 * rng.normal();
    }
    return 0.0;
}

}  // namespace iadsim::stats
