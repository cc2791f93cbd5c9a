#include "iadsim/ks_test.hpp"

#include <algorithm>
#include <cmath>

#include "iadsim/common.hpp"

namespace iadsim::stats {

double ks_critical_coefficient(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidSpec("alpha must lie in (0, 1)");
    return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

double ks_critical_value(double alpha, int n) {
    if (n < 1) throw EmptySample();
    return ks_critical_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

KsResult ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf,
                      double alpha) {
    if (sample.empty()) throw EmptySample();
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidSpec("alpha must lie in (0, 1)");
    std::sort(sample.begin(), sample.end());

    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));        // left limit
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));    // right limit
    }

    KsResult result;
    result.d_stat = d;
    result.n = static_cast<int>(sample.size());
    result.alpha = alpha;
    result.critical = ks_critical_value(alpha, result.n);
    result.reject = result.d_stat > result.critical;
    return result;
}

KsResult ks_statistic(std::vector<double> sample, const ReferenceDist& dist, double alpha) {
    return ks_statistic(std::move(sample),
                        [&dist](double x) { return reference_cdf(dist, x); }, alpha);
}

}  // namespace iadsim::stats
