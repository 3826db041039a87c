// Metric aggregators, variant axes, edge-case policies, per-tool presets
// and the combined pipeline that computes all metrics from one pair of
// directed distance sets.

#ifndef SEGDIST_METRICS_HPP
#define SEGDIST_METRICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "segdist/boundary.hpp"
#include "segdist/distance.hpp"
#include "segdist/edt.hpp"
#include "segdist/grid.hpp"

namespace segdist {

enum class SpacingMode { Physical, UnitFlaw };
enum class HdpMode { MaxOfDirected, Pooled, MeanOfDirected, WeightedMaxOfDirected };
enum class MasdMode { MeanOfMeans, MaxOfMeans, WeightedMean };
enum class AssdMode { PooledMean, WeightedPooledMean };
enum class NsdMode { Count, WeightedArea };
enum class EdgePolicy { Reloaded, NaN, Error };

enum class Metric : int { HD = 0, HDP, MASD, ASSD, NSD, BIoU, DSC };
constexpr int kMetricCount = 7;

inline std::string to_string(Metric m) {
    switch (m) {
        case Metric::HD: return "hd";
        case Metric::HDP: return "hdp";
        case Metric::MASD: return "masd";
        case Metric::ASSD: return "assd";
        case Metric::NSD: return "nsd";
        case Metric::BIoU: return "biou";
        case Metric::DSC: return "dsc";
    }
    return "?";
}

inline bool is_absolute(Metric m) {
    return m == Metric::HD || m == Metric::HDP || m == Metric::MASD || m == Metric::ASSD;
}

struct MetricConfig {
    BoundaryMode boundary_mode = BoundaryMode::ErodeFace;
    // Per-metric boundary override for tools whose MASD path differs from
    // their HD/NSD path (pymia, SimpleITK).
    std::optional<BoundaryMode> masd_boundary;
    SpacingMode spacing_mode = SpacingMode::Physical;
    HdpMode hdp_mode = HdpMode::MaxOfDirected;
    MasdMode masd_mode = MasdMode::MeanOfMeans;
    AssdMode assd_mode = AssdMode::PooledMean;
    NsdMode nsd_mode = NsdMode::Count;
    EdgePolicy edge_policy = EdgePolicy::Reloaded;
    double p = 95.0;   // percentile, (0,100]
    double tau = 2.0;  // mm, > 0

    void validate() const {
        if (!(p > 0.0 && p <= 100.0)) throw error("percentile p must be in (0,100]");
        if (!(tau > 0.0)) throw error("tau must be > 0");
        const bool weighted = hdp_mode == HdpMode::WeightedMaxOfDirected ||
                              assd_mode == AssdMode::WeightedPooledMean ||
                              nsd_mode == NsdMode::WeightedArea;
        if (weighted && boundary_mode != BoundaryMode::Interface)
            throw error("weighted aggregation requires the interface boundary mode");
        const BoundaryMode mb = masd_boundary.value_or(boundary_mode);
        if (masd_mode == MasdMode::WeightedMean && mb != BoundaryMode::Interface)
            throw error("weighted MASD requires the interface boundary mode");
    }
};

struct MetricValue {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool supported = true;
    bool warning = false;
    std::string note;
};

struct MetricResult {
    std::array<MetricValue, kMetricCount> values;
    bool empty_a = false;
    bool empty_b = false;

    MetricValue& operator[](Metric m) { return values[static_cast<int>(m)]; }
    const MetricValue& operator[](Metric m) const { return values[static_cast<int>(m)]; }
};

struct EdgeContext {
    bool empty_a = false;
    bool empty_b = false;
    EdgePolicy policy = EdgePolicy::Reloaded;

    bool any_empty() const { return empty_a || empty_b; }
};

// Convention for empty inputs: one empty mask gives inf for absolute and
// 0 for relative metrics; both empty give 0 mm and 1. NaN policy yields
// NaN throughout; Error refuses the computation.
inline MetricValue edge_case(Metric kind, bool empty_a, bool empty_b, EdgePolicy policy) {
    MetricValue mv;
    mv.warning = true;
    const std::string which = (empty_a && empty_b) ? "both masks empty"
                              : empty_a            ? "mask A empty"
                                                   : "mask B empty";
    mv.note = which;
    switch (policy) {
        case EdgePolicy::Error:
            throw error("empty input for " + to_string(kind) + ": " + which);
        case EdgePolicy::NaN:
            mv.value = std::numeric_limits<double>::quiet_NaN();
            return mv;
        case EdgePolicy::Reloaded:
            if (empty_a && empty_b)
                mv.value = is_absolute(kind) ? 0.0 : 1.0;
            else
                mv.value = is_absolute(kind) ? std::numeric_limits<double>::infinity() : 0.0;
            return mv;
    }
    return mv;
}

namespace agg {

// Percentile position rule: 1-based position round((p/100)*n), half up,
// clamped to [1, n]. Empty directed sets contribute 0.
inline double percentile(std::vector<double> values, double p) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const auto n = static_cast<long>(values.size());
    long pos = static_cast<long>(std::floor((p / 100.0) * double(n) + 0.5));
    pos = std::clamp(pos, 1L, n);
    return values[static_cast<std::size_t>(pos - 1)];
}

// Smallest distance whose cumulative weight reaches (p/100) of the total.
inline double weighted_percentile(const std::vector<double>& d, const std::vector<double>& w,
                                  double p) {
    if (d.empty()) return 0.0;
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
    double total = 0.0;
    for (double x : w) total += x;
    const double threshold = (p / 100.0) * total;
    double cum = 0.0;
    for (std::size_t i : order) {
        cum += w[i];
        if (cum >= threshold) return d[i];
    }
    return d[order.back()];
}

inline double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

inline double weighted_mean_of(const std::vector<double>& d, const std::vector<double>& w) {
    if (d.empty()) return 0.0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        num += w[i] * d[i];
        den += w[i];
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace agg

inline MetricValue hd(const DistanceSet& dab, const DistanceSet& dba, const EdgeContext& ec) {
    if (ec.any_empty()) return edge_case(Metric::HD, ec.empty_a, ec.empty_b, ec.policy);
    MetricValue mv;
    mv.value = std::max(agg::max_of(dab.distances), agg::max_of(dba.distances));
    return mv;
}

inline MetricValue hdp(const DistanceSet& dab, const DistanceSet& dba, double p, HdpMode mode,
                       const EdgeContext& ec) {
    if (ec.any_empty()) return edge_case(Metric::HDP, ec.empty_a, ec.empty_b, ec.policy);
    MetricValue mv;
    switch (mode) {
        case HdpMode::MaxOfDirected:
            mv.value = std::max(agg::percentile(dab.distances, p), agg::percentile(dba.distances, p));
            break;
        case HdpMode::Pooled: {
            std::vector<double> pooled = dab.distances;
            pooled.insert(pooled.end(), dba.distances.begin(), dba.distances.end());
            mv.value = agg::percentile(std::move(pooled), p);
            break;
        }
        case HdpMode::MeanOfDirected:
            mv.value =
                0.5 * (agg::percentile(dab.distances, p) + agg::percentile(dba.distances, p));
            break;
        case HdpMode::WeightedMaxOfDirected:
            mv.value = std::max(agg::weighted_percentile(dab.distances, dab.weights, p),
                                agg::weighted_percentile(dba.distances, dba.weights, p));
            break;
    }
    return mv;
}

inline MetricValue masd(const DistanceSet& dab, const DistanceSet& dba, MasdMode mode,
                        const EdgeContext& ec) {
    if (ec.any_empty()) return edge_case(Metric::MASD, ec.empty_a, ec.empty_b, ec.policy);
    MetricValue mv;
    switch (mode) {
        case MasdMode::MeanOfMeans:
            mv.value = 0.5 * (agg::mean_of(dab.distances) + agg::mean_of(dba.distances));
            break;
        case MasdMode::MaxOfMeans:
            mv.value = std::max(agg::mean_of(dab.distances), agg::mean_of(dba.distances));
            break;
        case MasdMode::WeightedMean:
            mv.value = 0.5 * (agg::weighted_mean_of(dab.distances, dab.weights) +
                              agg::weighted_mean_of(dba.distances, dba.weights));
            break;
    }
    return mv;
}

inline MetricValue assd(const DistanceSet& dab, const DistanceSet& dba, AssdMode mode,
                        const EdgeContext& ec) {
    if (ec.any_empty()) return edge_case(Metric::ASSD, ec.empty_a, ec.empty_b, ec.policy);
    MetricValue mv;
    // Per-direction partial sums keep the result bit-identical under
    // input swapping.
    if (mode == AssdMode::PooledMean) {
        const std::size_t n = dab.count() + dba.count();
        if (n == 0) {
            mv.value = 0.0;
            return mv;
        }
        double sab = 0.0, sba = 0.0;
        for (double x : dab.distances) sab += x;
        for (double x : dba.distances) sba += x;
        mv.value = (sab + sba) / double(n);
    } else {
        double num_ab = 0.0, den_ab = 0.0, num_ba = 0.0, den_ba = 0.0;
        for (std::size_t i = 0; i < dab.count(); ++i) {
            num_ab += dab.weights[i] * dab.distances[i];
            den_ab += dab.weights[i];
        }
        for (std::size_t i = 0; i < dba.count(); ++i) {
            num_ba += dba.weights[i] * dba.distances[i];
            den_ba += dba.weights[i];
        }
        const double den = den_ab + den_ba;
        mv.value = den > 0.0 ? (num_ab + num_ba) / den : 0.0;
    }
    return mv;
}

// Fraction of boundary within tau of the other boundary; comparison is
// inclusive (d <= tau).
inline MetricValue nsd(const DistanceSet& dab, const DistanceSet& dba, double tau, NsdMode mode,
                       const EdgeContext& ec) {
    if (ec.any_empty()) return edge_case(Metric::NSD, ec.empty_a, ec.empty_b, ec.policy);
    MetricValue mv;
    if (mode == NsdMode::Count) {
        const std::size_t n = dab.count() + dba.count();
        if (n == 0) {
            mv.value = 1.0;
            return mv;
        }
        std::size_t hit = 0;
        for (double x : dab.distances) hit += (x <= tau);
        for (double x : dba.distances) hit += (x <= tau);
        mv.value = double(hit) / double(n);
    } else {
        double num_ab = 0.0, den_ab = 0.0, num_ba = 0.0, den_ba = 0.0;
        for (std::size_t i = 0; i < dab.count(); ++i) {
            den_ab += dab.weights[i];
            if (dab.distances[i] <= tau) num_ab += dab.weights[i];
        }
        for (std::size_t i = 0; i < dba.count(); ++i) {
            den_ba += dba.weights[i];
            if (dba.distances[i] <= tau) num_ba += dba.weights[i];
        }
        const double den = den_ab + den_ba;
        mv.value = den > 0.0 ? (num_ab + num_ba) / den : 1.0;
    }
    return mv;
}

namespace detail {

// Inner tau-band: foreground elements whose center is within tau (mm) of
// the background, outside-grid included. Returns one byte per element.
inline std::vector<std::uint8_t> inner_band(const GridMask& mask, const std::vector<double>& spacing,
                                            double tau) {
    const int r = mask.rank();
    std::vector<int> pdims(static_cast<std::size_t>(r));
    std::size_t pn = 1;
    for (int a = 0; a < r; ++a) {
        pdims[static_cast<std::size_t>(a)] = mask.dims[static_cast<std::size_t>(a)] + 2;
        pn *= static_cast<std::size_t>(pdims[static_cast<std::size_t>(a)]);
    }
    // Padded grid: background everywhere except the original foreground.
    std::vector<std::uint8_t> bg(pn, 1);
    const std::size_t n = mask.size();
    auto padded_linear = [&](std::array<int, 3> idx) {
        std::size_t lin = 0;
        for (int a = 0; a < r; ++a)
            lin = lin * static_cast<std::size_t>(pdims[static_cast<std::size_t>(a)]) +
                  static_cast<std::size_t>(idx[a] + 1);
        return lin;
    };
    for (std::size_t lin = 0; lin < n; ++lin)
        if (mask.data[lin]) bg[padded_linear(mask.unravel(lin))] = 0;

    const DistanceField field = edt(bg, pdims, spacing, EdtPurpose::Band);
    std::vector<std::uint8_t> band(n, 0);
    for (std::size_t lin = 0; lin < n; ++lin)
        if (mask.data[lin] && field.at(padded_linear(mask.unravel(lin))) <= tau) band[lin] = 1;
    return band;
}

}  // namespace detail

inline MetricValue biou(const GridMask& a, const GridMask& b, double tau, EdgePolicy policy,
                        const std::vector<double>& spacing) {
    if (a.dims != b.dims) throw error("biou requires masks on the same grid");
    if (!(tau > 0.0)) throw error("tau must be > 0");
    const bool ea = a.empty_mask(), eb = b.empty_mask();
    if (ea || eb) return edge_case(Metric::BIoU, ea, eb, policy);

    const std::vector<std::uint8_t> band_a = detail::inner_band(a, spacing, tau);
    const std::vector<std::uint8_t> band_b = detail::inner_band(b, spacing, tau);
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < band_a.size(); ++i) {
        inter += (band_a[i] & band_b[i]);
        uni += (band_a[i] | band_b[i]);
    }
    if (uni == 0) {
        // Both tau-bands empty although the masks are not.
        MetricValue mv = edge_case(Metric::BIoU, true, true, policy);
        mv.note = "both tau-bands empty";
        return mv;
    }
    MetricValue mv;
    mv.value = double(inter) / double(uni);
    return mv;
}

inline MetricValue biou(const GridMask& a, const GridMask& b, double tau, EdgePolicy policy) {
    return biou(a, b, tau, policy, a.spacing);
}

inline MetricValue dsc(const GridMask& a, const GridMask& b, EdgePolicy policy) {
    if (a.dims != b.dims) throw error("dsc requires masks on the same grid");
    const bool ea = a.empty_mask(), eb = b.empty_mask();
    if (ea || eb) return edge_case(Metric::DSC, ea, eb, policy);
    std::size_t inter = 0, ca = 0, cb = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        ca += a.data[i];
        cb += b.data[i];
        inter += (a.data[i] & b.data[i]);
    }
    MetricValue mv;
    mv.value = 2.0 * double(inter) / double(ca + cb);
    return mv;
}

using SupportMask = std::array<bool, kMetricCount>;
constexpr SupportMask kSupportAll{true, true, true, true, true, true, true};

namespace detail {

// Directed distance sets for cell-centered query sets via one EDT per
// target set; interface sets go through the refined-grid exact route.
inline std::pair<DistanceSet, DistanceSet> directed_pair(const BoundarySet& sa,
                                                         const BoundarySet& sb,
                                                         const GridMask& grid,
                                                         const std::vector<double>& spacing,
                                                         bool interface_mode) {
    if (interface_mode) {
        DistanceSet dab = directed_refined(sa, sb, grid.dims, spacing, "AB");
        DistanceSet dba = directed_refined(sb, sa, grid.dims, spacing, "BA");
        return {std::move(dab), std::move(dba)};
    }
    DistanceSet dab, dba;
    dab.direction = "AB";
    dba.direction = "BA";
    dab.weights = sa.weights;
    dba.weights = sb.weights;
    const double inf = std::numeric_limits<double>::infinity();
    if (!sa.empty()) {
        if (sb.empty()) {
            dab.distances.assign(sa.count(), inf);
        } else {
            std::vector<std::uint8_t> src(grid.size(), 0);
            for (std::size_t c : sb.cells) src[c] = 1;
            const DistanceField fb = edt(src, grid.dims, spacing, EdtPurpose::Boundary);
            dab.distances.reserve(sa.count());
            for (std::size_t c : sa.cells) dab.distances.push_back(fb.at(c));
        }
    }
    if (!sb.empty()) {
        if (sa.empty()) {
            dba.distances.assign(sb.count(), inf);
        } else {
            std::vector<std::uint8_t> src(grid.size(), 0);
            for (std::size_t c : sa.cells) src[c] = 1;
            const DistanceField fa = edt(src, grid.dims, spacing, EdtPurpose::Boundary);
            dba.distances.reserve(sb.count());
            for (std::size_t c : sb.cells) dba.distances.push_back(fa.at(c));
        }
    }
    return {std::move(dab), std::move(dba)};
}

}  // namespace detail

// Full pipeline: joint crop, one boundary extraction, two directed
// distance sets, every requested aggregator. UnitFlaw substitutes unit
// spacing for all distance computations while leaving tau untouched.
inline MetricResult compute_all(const GridMask& a, const GridMask& b, const MetricConfig& config,
                                const SupportMask& support = kSupportAll, bool crop = true,
                                int crop_margin = 1) {
    config.validate();
    a.validate();
    b.validate();
    if (a.dims != b.dims || a.spacing != b.spacing)
        throw error("compute_all requires masks on the same grid");

    MetricResult result;
    result.empty_a = a.empty_mask();
    result.empty_b = b.empty_mask();
    for (int i = 0; i < kMetricCount; ++i) result.values[static_cast<std::size_t>(i)].supported = support[static_cast<std::size_t>(i)];

    const EdgeContext ec{result.empty_a, result.empty_b, config.edge_policy};
    auto set = [&](Metric m, auto&& fn) {
        if (!support[static_cast<int>(m)]) return;
        try {
            MetricValue mv = fn();
            mv.supported = true;
            result[m] = std::move(mv);
        } catch (const error& e) {
            // Per-metric independence: an edge refusal does not abort the rest.
            MetricValue mv;
            mv.warning = true;
            mv.note = e.what();
            result[m] = std::move(mv);
        }
    };

    if (ec.any_empty()) {
        for (int i = 0; i < kMetricCount; ++i)
            set(static_cast<Metric>(i), [&] {
                return edge_case(static_cast<Metric>(i), ec.empty_a, ec.empty_b, ec.policy);
            });
        return result;
    }

    GridMask ca = a, cb = b;
    if (crop) {
        CropResult cr = crop_joint(a, b, crop_margin);
        ca = std::move(cr.a);
        cb = std::move(cr.b);
    }
    std::vector<double> spacing = ca.spacing;
    if (config.spacing_mode == SpacingMode::UnitFlaw) spacing.assign(spacing.size(), 1.0);

    const bool need_distances = support[static_cast<int>(Metric::HD)] ||
                                support[static_cast<int>(Metric::HDP)] ||
                                support[static_cast<int>(Metric::MASD)] ||
                                support[static_cast<int>(Metric::ASSD)] ||
                                support[static_cast<int>(Metric::NSD)];
    DistanceSet dab, dba;
    bool nonoverlap_gap = false;
    if (need_distances) {
        auto [sa, sb] = extract_pair(ca, cb, config.boundary_mode, spacing);
        nonoverlap_gap = config.boundary_mode == BoundaryMode::ForegroundNonOverlap &&
                         (sa.empty() != sb.empty());
        auto sets = detail::directed_pair(sa, sb, ca, spacing,
                                          config.boundary_mode == BoundaryMode::Interface);
        dab = std::move(sets.first);
        dba = std::move(sets.second);
    }

    set(Metric::HD, [&] { return hd(dab, dba, ec); });
    set(Metric::HDP, [&] { return hdp(dab, dba, config.p, config.hdp_mode, ec); });
    set(Metric::ASSD, [&] { return assd(dab, dba, config.assd_mode, ec); });
    set(Metric::NSD, [&] { return nsd(dab, dba, config.tau, config.nsd_mode, ec); });

    set(Metric::MASD, [&] {
        const BoundaryMode mb = config.masd_boundary.value_or(config.boundary_mode);
        if (mb == config.boundary_mode) return masd(dab, dba, config.masd_mode, ec);
        auto [sa, sb] = extract_pair(ca, cb, mb, spacing);
        auto sets = detail::directed_pair(sa, sb, ca, spacing, mb == BoundaryMode::Interface);
        return masd(sets.first, sets.second, config.masd_mode, ec);
    });

    set(Metric::BIoU, [&] { return biou(ca, cb, config.tau, config.edge_policy, spacing); });
    set(Metric::DSC, [&] { return dsc(ca, cb, config.edge_policy); });

    if (nonoverlap_gap) {
        for (Metric m : {Metric::HD, Metric::HDP, Metric::MASD, Metric::ASSD, Metric::NSD}) {
            if (result[m].supported && !result[m].warning) {
                result[m].warning = true;
                result[m].note = "one non-overlap set empty (containment)";
            }
        }
    }
    return result;
}

// Named preset: a full variant-axis assignment reproducing one surveyed
// tool's documented definitional behavior, plus its metric support mask.
struct Preset {
    std::string name;
    MetricConfig config;
    SupportMask supports = kSupportAll;
    std::string notes;
};

inline SupportMask support_of(std::initializer_list<Metric> metrics) {
    SupportMask s{};
    s.fill(false);
    for (Metric m : metrics) s[static_cast<int>(m)] = true;
    return s;
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{
        "anima",  "evaluatesegmentation", "gdm",         "medpy",
        "metricsreloaded", "miseval",     "monai",       "plastimatch",
        "pymia",  "segmetrics",           "simpleitk"};
    return names;
}

inline Preset preset(const std::string& name, double p = 95.0, double tau = 2.0,
                     EdgePolicy policy = EdgePolicy::Reloaded) {
    Preset pr;
    pr.name = name;
    MetricConfig& c = pr.config;
    c.p = p;
    c.tau = tau;
    c.edge_policy = policy;

    if (name == "anima") {
        c.boundary_mode = BoundaryMode::ErodeFace;
        c.masd_mode = MasdMode::MaxOfMeans;
        pr.supports = support_of({Metric::HD, Metric::MASD, Metric::ASSD, Metric::DSC});
        pr.notes = "MASD is the maximum of the two directed averages";
    } else if (name == "evaluatesegmentation") {
        c.boundary_mode = BoundaryMode::ForegroundNonOverlap;
        c.hdp_mode = HdpMode::Pooled;
        pr.supports = support_of({Metric::HD, Metric::HDP, Metric::MASD, Metric::DSC});
        pr.notes = "non-overlap query points; fixed 95th percentile; the real tool's "
                   "non-deterministic percentile optimization is not emulated";
    } else if (name == "gdm") {
        c.boundary_mode = BoundaryMode::Interface;
        c.hdp_mode = HdpMode::WeightedMaxOfDirected;
        c.masd_mode = MasdMode::WeightedMean;
        c.assd_mode = AssdMode::WeightedPooledMean;
        c.nsd_mode = NsdMode::WeightedArea;
        pr.supports = support_of(
            {Metric::HD, Metric::HDP, Metric::MASD, Metric::ASSD, Metric::NSD, Metric::DSC});
        pr.notes = "boundary-element-size weighted aggregation on interface faces; face "
                   "measures are exact rather than a marching-cubes approximation";
    } else if (name == "medpy") {
        c.boundary_mode = BoundaryMode::ErodeFace;
        c.hdp_mode = HdpMode::Pooled;
        pr.supports = support_of({Metric::HD, Metric::HDP, Metric::ASSD, Metric::DSC});
        pr.notes = "percentile on the union of both directed sets; fixed 95th percentile";
    } else if (name == "metricsreloaded") {
        c.boundary_mode = BoundaryMode::ErodeFace;
        pr.supports = kSupportAll;
        pr.notes = "the real tool's BIoU ignores element size; reproduce that with the "
                   "unit-spacing mode if needed";
    } else if (name == "miseval") {
        c.boundary_mode = BoundaryMode::ErodeFace;
        c.spacing_mode = SpacingMode::UnitFlaw;
        pr.supports = support_of({Metric::HD, Metric::DSC});
        pr.notes = "distances ignore the element size (unit-grid flaw)";
    } else if (name == "monai") {
        c.boundary_mode = BoundaryMode::ErodeFace;
        pr.supports = support_of(
            {Metric::HD, Metric::HDP, Metric::ASSD, Metric::NSD, Metric::DSC});
    } else if (name == "plastimatch") {
        c.boundary_mode = BoundaryMode::ErodeFace;
        c.hdp_mode = HdpMode::MeanOfDirected;
        pr.supports = support_of({Metric::HD, Metric::HDP, Metric::MASD, Metric::DSC});
        pr.notes = "averages the two directed percentiles, so HDp(100) can fall below HD; "
                   "fixed 95th percentile";
    } else if (name == "pymia") {
        c.boundary_mode = BoundaryMode::Interface;
        c.hdp_mode = HdpMode::WeightedMaxOfDirected;
        c.nsd_mode = NsdMode::WeightedArea;
        c.masd_boundary = BoundaryMode::ForegroundAll;
        pr.supports =
            support_of({Metric::HD, Metric::HDP, Metric::MASD, Metric::NSD, Metric::DSC});
        pr.notes = "interface boundary for HD/HDp/NSD, foreground centers for MASD; the "
                   "tool's separate 2D path is approximated by the same configuration";
    } else if (name == "segmetrics") {
        c.boundary_mode = BoundaryMode::ErodeFull;
        c.hdp_mode = HdpMode::Pooled;
        pr.supports = support_of({Metric::HD, Metric::HDP, Metric::ASSD, Metric::DSC});
        pr.notes = "full-connectivity erosion boundary; fixed 95th percentile";
    } else if (name == "simpleitk") {
        c.boundary_mode = BoundaryMode::ErodeFace;
        c.masd_boundary = BoundaryMode::ForegroundAll;
        pr.supports = support_of({Metric::HD, Metric::MASD, Metric::DSC});
        pr.notes = "MASD computed over all foreground centers";
    } else {
        throw error("unknown preset '" + name + "'");
    }
    pr.config.validate();
    return pr;
}

}  // namespace segdist

#endif  // SEGDIST_METRICS_HPP
