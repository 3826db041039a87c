#ifndef SEGDIST_TEST_HELPERS_HPP
#define SEGDIST_TEST_HELPERS_HPP

#include <cmath>
#include <vector>

#include "segdist/segdist.hpp"

namespace testutil {

inline segdist::GridMask make_mask(std::vector<int> dims, std::vector<double> spacing,
                                   std::vector<std::uint8_t> data) {
    segdist::GridMask m;
    m.dims = std::move(dims);
    m.spacing = std::move(spacing);
    m.data = std::move(data);
    m.validate();
    return m;
}

inline segdist::GridMask random_mask(segdist::Rng& rng, std::vector<int> dims,
                                     std::vector<double> spacing, double density = 0.3) {
    segdist::GridMask m;
    m.dims = std::move(dims);
    m.spacing = std::move(spacing);
    m.data.resize(m.size());
    for (auto& b : m.data) b = rng.uniform() < density ? 1 : 0;
    return m;
}

// Random blob-like pair with guaranteed nonempty overlap.
inline segdist::MaskPair random_pair(std::uint64_t seed, std::vector<int> dims,
                                     std::vector<double> spacing, double level = 0.3) {
    segdist::GenParams params;
    params.seed = seed;
    params.count = 1;
    params.dims = std::move(dims);
    params.spacing = std::move(spacing);
    params.level = level;
    return segdist::gen_pair(params, 0, false);
}

inline bool close(double a, double b, double rel = 1e-9) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool results_close(const segdist::MetricResult& x, const segdist::MetricResult& y,
                          double rel = 1e-9) {
    for (int i = 0; i < segdist::kMetricCount; ++i) {
        const auto& a = x.values[static_cast<std::size_t>(i)];
        const auto& b = y.values[static_cast<std::size_t>(i)];
        if (a.supported != b.supported) return false;
        if (!a.supported) continue;
        if (!close(a.value, b.value, rel)) return false;
    }
    return true;
}

}  // namespace testutil

#endif
