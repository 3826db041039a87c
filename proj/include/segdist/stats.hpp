// Two-sided paired Wilcoxon signed-rank test (exact null enumeration for
// small n, normal approximation with tie correction above) and summary
// statistics for deviation analysis.

#ifndef SEGDIST_STATS_HPP
#define SEGDIST_STATS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "segdist/grid.hpp"

namespace segdist {

struct WilcoxonResult {
    double p = 1.0;
    bool significant = false;
    int n = 0;           // nonzero differences used
    double w_plus = 0.0; // sum of positive-difference ranks
    bool exact = true;
};

constexpr int kWilcoxonExactLimit = 25;

// Two-sided paired signed-rank test; zero differences are dropped
// (Wilcoxon convention). Significance uses alpha/corrections.
inline WilcoxonResult wilcoxon_paired(const std::vector<double>& x, const std::vector<double>& y,
                                      int corrections = 1, double alpha = 0.05) {
    if (x.size() != y.size() || x.empty()) throw error("wilcoxon: need equal nonzero lengths");
    if (corrections < 1) throw error("wilcoxon: corrections must be >= 1");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult res;
    res.n = static_cast<int>(diffs.size());
    if (diffs.empty()) {
        res.p = 1.0;
        return res;
    }

    // Average ranks of |d| with tie handling; doubled so they are integers.
    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::fabs(diffs[i]) < std::fabs(diffs[j]);
    });
    std::vector<long> rank2(n);  // 2 * rank
    std::vector<long> tie_sizes;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && std::fabs(diffs[order[j + 1]]) == std::fabs(diffs[order[i]])) ++j;
        const long r2 = static_cast<long>(i + j) + 2;  // 2 * average of 1-based ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
        tie_sizes.push_back(static_cast<long>(j - i + 1));
        i = j + 1;
    }

    long w2_plus = 0, total2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        total2 += rank2[k];
        if (diffs[k] > 0.0) w2_plus += rank2[k];
    }
    res.w_plus = double(w2_plus) / 2.0;

    if (res.n <= kWilcoxonExactLimit) {
        // Exact null distribution of W+ over all 2^n sign assignments via
        // convolution; counts stay below 2^53 so doubles are exact.
        std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
        count[0] = 1.0;
        long reach = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const long r = rank2[k];
            for (long s = reach; s >= 0; --s)
                if (count[static_cast<std::size_t>(s)] > 0.0)
                    count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
            reach += r;
        }
        const double denom = std::pow(2.0, double(res.n));
        double le = 0.0, ge = 0.0;
        for (long s = 0; s <= total2; ++s) {
            if (s <= w2_plus) le += count[static_cast<std::size_t>(s)];
            if (s >= w2_plus) ge += count[static_cast<std::size_t>(s)];
        }
        res.p = std::min(1.0, 2.0 * std::min(le, ge) / denom);
        res.exact = true;
    } else {
        const double nn = double(res.n);
        const double mean = nn * (nn + 1.0) / 4.0;
        double tie_term = 0.0;
        for (long t : tie_sizes) tie_term += double(t) * double(t) * double(t) - double(t);
        const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
        if (var <= 0.0) {
            res.p = 1.0;
        } else {
            const double z = (res.w_plus - mean) / std::sqrt(var);
            res.p = std::erfc(std::fabs(z) / std::sqrt(2.0));
        }
        res.exact = false;
    }

    res.significant = res.p < alpha / double(corrections);
    return res;
}

struct SummaryStats {
    int n = 0;
    int excluded = 0;  // non-finite values left out
    double min = std::numeric_limits<double>::quiet_NaN();
    double max = std::numeric_limits<double>::quiet_NaN();
    double mean = std::numeric_limits<double>::quiet_NaN();
    double sd = std::numeric_limits<double>::quiet_NaN();  // population SD
};

inline SummaryStats summarize(const std::vector<double>& values) {
    SummaryStats s;
    std::vector<double> finite;
    for (double v : values) {
        if (std::isfinite(v))
            finite.push_back(v);
        else
            ++s.excluded;
    }
    s.n = static_cast<int>(finite.size());
    if (finite.empty()) return s;
    s.min = *std::min_element(finite.begin(), finite.end());
    s.max = *std::max_element(finite.begin(), finite.end());
    double sum = 0.0;
    for (double v : finite) sum += v;
    s.mean = sum / double(finite.size());
    double ss = 0.0;
    for (double v : finite) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / double(finite.size()));
    return s;
}

}  // namespace segdist

#endif  // SEGDIST_STATS_HPP
