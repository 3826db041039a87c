// Independent ground-truth route for tests: literal O(N*M) pairwise
// distances, direct transcription of the aggregation formulas, no EDT,
// no cropping, no distance reuse. Intended for small instances only.

#ifndef SEGDIST_ORACLE_HPP
#define SEGDIST_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "segdist/grid.hpp"
#include "segdist/metrics.hpp"

namespace segdist::oracle {

struct Point {
    double x = 0, y = 0, z = 0;
    double w = 1.0;
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool fg(const GridMask& m, int x, int y, int z) {
    std::array<int, 3> idx{x, y, z};
    if (!m.in_bounds(idx)) return false;
    return m.at(idx);
}

inline void for_each_index(const GridMask& m, auto&& fn) {
    const int nz = m.rank() == 3 ? m.dims[2] : 1;
    for (int x = 0; x < m.dims[0]; ++x)
        for (int y = 0; y < m.dims[1]; ++y)
            for (int z = 0; z < nz; ++z) fn(x, y, z);
}

inline Point center(const GridMask& m, const std::vector<double>& sp, int x, int y, int z) {
    Point p;
    p.x = x * sp[0];
    p.y = y * sp[1];
    p.z = m.rank() == 3 ? z * sp[2] : 0.0;
    return p;
}

inline std::vector<Point> erode_boundary(const GridMask& m, const std::vector<double>& sp,
                                         bool full) {
    std::vector<Point> pts;
    for_each_index(m, [&](int x, int y, int z) {
        if (!fg(m, x, y, z)) return;
        bool boundary = false;
        const int zlo = m.rank() == 3 ? -1 : 0, zhi = m.rank() == 3 ? 1 : 0;
        for (int dx = -1; dx <= 1 && !boundary; ++dx)
            for (int dy = -1; dy <= 1 && !boundary; ++dy)
                for (int dz = zlo; dz <= zhi && !boundary; ++dz) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
                    if (!full && manhattan != 1) continue;
                    if (!fg(m, x + dx, y + dy, z + dz)) boundary = true;
                }
        if (boundary) pts.push_back(center(m, sp, x, y, z));
    });
    return pts;
}

inline std::vector<Point> interface_points(const GridMask& m, const std::vector<double>& sp) {
    std::vector<Point> pts;
    const int r = m.rank();
    for_each_index(m, [&](int x, int y, int z) {
        if (!fg(m, x, y, z)) return;
        for (int a = 0; a < r; ++a)
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                int nx = x, ny = y, nz = z;
                if (a == 0) nx += sgn;
                if (a == 1) ny += sgn;
                if (a == 2) nz += sgn;
                if (fg(m, nx, ny, nz)) continue;
                Point p = center(m, sp, x, y, z);
                if (a == 0) p.x += 0.5 * sgn * sp[0];
                if (a == 1) p.y += 0.5 * sgn * sp[1];
                if (a == 2) p.z += 0.5 * sgn * sp[2];
                double w = 1.0;
                for (int t = 0; t < r; ++t)
                    if (t != a) w *= sp[t];
                p.w = w;
                pts.push_back(p);
            }
    });
    return pts;
}

inline std::vector<Point> foreground_points(const GridMask& m, const std::vector<double>& sp) {
    std::vector<Point> pts;
    for_each_index(m, [&](int x, int y, int z) {
        if (fg(m, x, y, z)) pts.push_back(center(m, sp, x, y, z));
    });
    return pts;
}

inline std::vector<Point> nonoverlap_points(const GridMask& keep, const GridMask& minus,
                                            const std::vector<double>& sp) {
    std::vector<Point> pts;
    for_each_index(keep, [&](int x, int y, int z) {
        if (fg(keep, x, y, z) && !fg(minus, x, y, z)) pts.push_back(center(keep, sp, x, y, z));
    });
    return pts;
}

inline std::vector<Point> query_points(const GridMask& self, const GridMask& other,
                                       const std::vector<double>& sp, BoundaryMode mode) {
    switch (mode) {
        case BoundaryMode::ErodeFace: return erode_boundary(self, sp, false);
        case BoundaryMode::ErodeFull: return erode_boundary(self, sp, true);
        case BoundaryMode::Interface: return interface_points(self, sp);
        case BoundaryMode::ForegroundAll: return foreground_points(self, sp);
        case BoundaryMode::ForegroundNonOverlap: return nonoverlap_points(self, other, sp);
    }
    throw error("unknown boundary mode");
}

// All pairwise minima, literal.
inline std::vector<double> min_distances(const std::vector<Point>& from,
                                         const std::vector<Point>& to) {
    std::vector<double> out;
    out.reserve(from.size());
    for (const Point& p : from) {
        double best = kInf;
        for (const Point& q : to) {
            const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
            best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
        out.push_back(best == kInf ? kInf : std::sqrt(best));
    }
    return out;
}

inline double pct(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    long pos = static_cast<long>(std::floor((p / 100.0) * double(v.size()) + 0.5));
    pos = std::clamp(pos, 1L, static_cast<long>(v.size()));
    return v[static_cast<std::size_t>(pos - 1)];
}

inline double wpct(const std::vector<double>& d, const std::vector<double>& w, double p) {
    if (d.empty()) return 0.0;
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
    double total = 0.0;
    for (double x : w) total += x;
    double cum = 0.0;
    for (std::size_t i : order) {
        cum += w[i];
        if (cum >= (p / 100.0) * total) return d[i];
    }
    return d[order.back()];
}

inline double vmax(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

inline double vmean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

inline double wmean(const std::vector<double>& d, const std::vector<double>& w) {
    if (d.empty()) return 0.0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        num += w[i] * d[i];
        den += w[i];
    }
    return den > 0.0 ? num / den : 0.0;
}

// Minimum distance from a foreground element center to any background
// element center, outside-grid counted as background (scan over the
// one-element padded complement).
inline double dist_to_background(const GridMask& m, const std::vector<double>& sp, int x, int y,
                                 int z, double tau) {
    const int nz = m.rank() == 3 ? m.dims[2] : 1;
    const int zpad = m.rank() == 3 ? 1 : 0;
    double best = kInf;
    const double tau2 = tau * tau;
    for (int bx = -1; bx <= m.dims[0]; ++bx)
        for (int by = -1; by <= m.dims[1]; ++by)
            for (int bz = -zpad; bz <= nz - 1 + zpad; ++bz) {
                if (fg(m, bx, by, bz)) continue;
                const double dx = (x - bx) * sp[0], dy = (y - by) * sp[1];
                const double dz = m.rank() == 3 ? (z - bz) * sp[2] : 0.0;
                const double d2 = dx * dx + dy * dy + dz * dz;
                if (d2 < best) {
                    best = d2;
                    if (best <= tau2) return std::sqrt(best);
                }
            }
    return best == kInf ? kInf : std::sqrt(best);
}

}  // namespace detail

// Every metric by literal pairwise computation under the given config.
inline MetricResult all_metrics(const GridMask& a, const GridMask& b, const MetricConfig& config,
                                const SupportMask& support = kSupportAll) {
    config.validate();
    if (a.dims != b.dims || a.spacing != b.spacing)
        throw error("oracle requires masks on the same grid");

    MetricResult result;
    result.empty_a = a.empty_mask();
    result.empty_b = b.empty_mask();
    for (int i = 0; i < kMetricCount; ++i) result.values[static_cast<std::size_t>(i)].supported = support[static_cast<std::size_t>(i)];

    auto set = [&](Metric m, auto&& fn) {
        if (!support[static_cast<int>(m)]) return;
        try {
            MetricValue mv = fn();
            mv.supported = true;
            result[m] = std::move(mv);
        } catch (const error& e) {
            MetricValue mv;
            mv.warning = true;
            mv.note = e.what();
            result[m] = std::move(mv);
        }
    };

    const bool ea = result.empty_a, eb = result.empty_b;
    if (ea || eb) {
        for (int i = 0; i < kMetricCount; ++i)
            set(static_cast<Metric>(i),
                [&] { return edge_case(static_cast<Metric>(i), ea, eb, config.edge_policy); });
        return result;
    }

    std::vector<double> sp = a.spacing;
    if (config.spacing_mode == SpacingMode::UnitFlaw) sp.assign(sp.size(), 1.0);

    const std::vector<Point> pa = detail::query_points(a, b, sp, config.boundary_mode);
    const std::vector<Point> pb = detail::query_points(b, a, sp, config.boundary_mode);
    const std::vector<double> dab = detail::min_distances(pa, pb);
    const std::vector<double> dba = detail::min_distances(pb, pa);
    std::vector<double> wa, wb;
    for (const auto& p : pa) wa.push_back(p.w);
    for (const auto& p : pb) wb.push_back(p.w);

    set(Metric::HD, [&] {
        MetricValue mv;
        mv.value = std::max(detail::vmax(dab), detail::vmax(dba));
        return mv;
    });

    set(Metric::HDP, [&] {
        MetricValue mv;
        switch (config.hdp_mode) {
            case HdpMode::MaxOfDirected:
                mv.value = std::max(detail::pct(dab, config.p), detail::pct(dba, config.p));
                break;
            case HdpMode::Pooled: {
                std::vector<double> pooled = dab;
                pooled.insert(pooled.end(), dba.begin(), dba.end());
                mv.value = detail::pct(std::move(pooled), config.p);
                break;
            }
            case HdpMode::MeanOfDirected:
                mv.value = 0.5 * (detail::pct(dab, config.p) + detail::pct(dba, config.p));
                break;
            case HdpMode::WeightedMaxOfDirected:
                mv.value = std::max(detail::wpct(dab, wa, config.p), detail::wpct(dba, wb, config.p));
                break;
        }
        return mv;
    });

    set(Metric::MASD, [&] {
        std::vector<double> mab = dab, mba = dba, mwa = wa, mwb = wb;
        const BoundaryMode mb = config.masd_boundary.value_or(config.boundary_mode);
        if (mb != config.boundary_mode) {
            const auto qa = detail::query_points(a, b, sp, mb);
            const auto qb = detail::query_points(b, a, sp, mb);
            mab = detail::min_distances(qa, qb);
            mba = detail::min_distances(qb, qa);
            mwa.clear();
            mwb.clear();
            for (const auto& p : qa) mwa.push_back(p.w);
            for (const auto& p : qb) mwb.push_back(p.w);
        }
        MetricValue mv;
        switch (config.masd_mode) {
            case MasdMode::MeanOfMeans:
                mv.value = 0.5 * (detail::vmean(mab) + detail::vmean(mba));
                break;
            case MasdMode::MaxOfMeans:
                mv.value = std::max(detail::vmean(mab), detail::vmean(mba));
                break;
            case MasdMode::WeightedMean:
                mv.value = 0.5 * (detail::wmean(mab, mwa) + detail::wmean(mba, mwb));
                break;
        }
        return mv;
    });

    set(Metric::ASSD, [&] {
        MetricValue mv;
        if (config.assd_mode == AssdMode::PooledMean) {
            const std::size_t n = dab.size() + dba.size();
            double sab = 0.0, sba = 0.0;
            for (double x : dab) sab += x;
            for (double x : dba) sba += x;
            mv.value = n == 0 ? 0.0 : (sab + sba) / double(n);
        } else {
            double num_ab = 0, den_ab = 0, num_ba = 0, den_ba = 0;
            for (std::size_t i = 0; i < dab.size(); ++i) {
                num_ab += wa[i] * dab[i];
                den_ab += wa[i];
            }
            for (std::size_t i = 0; i < dba.size(); ++i) {
                num_ba += wb[i] * dba[i];
                den_ba += wb[i];
            }
            const double den = den_ab + den_ba;
            mv.value = den > 0.0 ? (num_ab + num_ba) / den : 0.0;
        }
        return mv;
    });

    set(Metric::NSD, [&] {
        MetricValue mv;
        if (config.nsd_mode == NsdMode::Count) {
            const std::size_t n = dab.size() + dba.size();
            if (n == 0) {
                mv.value = 1.0;
                return mv;
            }
            std::size_t hit = 0;
            for (double x : dab) hit += (x <= config.tau);
            for (double x : dba) hit += (x <= config.tau);
            mv.value = double(hit) / double(n);
        } else {
            double num_ab = 0, den_ab = 0, num_ba = 0, den_ba = 0;
            for (std::size_t i = 0; i < dab.size(); ++i) {
                den_ab += wa[i];
                if (dab[i] <= config.tau) num_ab += wa[i];
            }
            for (std::size_t i = 0; i < dba.size(); ++i) {
                den_ba += wb[i];
                if (dba[i] <= config.tau) num_ba += wb[i];
            }
            const double den = den_ab + den_ba;
            mv.value = den > 0.0 ? (num_ab + num_ba) / den : 1.0;
        }
        return mv;
    });

    set(Metric::BIoU, [&] {
        std::size_t inter = 0, uni = 0;
        detail::for_each_index(a, [&](int x, int y, int z) {
            const bool ba = detail::fg(a, x, y, z) &&
                            detail::dist_to_background(a, sp, x, y, z, config.tau) <= config.tau;
            const bool bb = detail::fg(b, x, y, z) &&
                            detail::dist_to_background(b, sp, x, y, z, config.tau) <= config.tau;
            inter += (ba && bb);
            uni += (ba || bb);
        });
        if (uni == 0) {
            MetricValue mv = edge_case(Metric::BIoU, true, true, config.edge_policy);
            mv.note = "both tau-bands empty";
            return mv;
        }
        MetricValue mv;
        mv.value = double(inter) / double(uni);
        return mv;
    });

    set(Metric::DSC, [&] {
        std::size_t inter = 0, ca = 0, cb = 0;
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            ca += a.data[i];
            cb += b.data[i];
            inter += (a.data[i] & b.data[i]);
        }
        MetricValue mv;
        mv.value = 2.0 * double(inter) / double(ca + cb);
        return mv;
    });

    return result;
}

}  // namespace segdist::oracle

#endif  // SEGDIST_ORACLE_HPP
