// Boundary extraction: convert binary masks into query-point sets with
// per-point weights under the extraction paradigms used by the surveyed
// tools (erosion peel with face/full connectivity, half-shifted interface
// faces, foreground centers, pairwise non-overlap).

#ifndef SEGDIST_BOUNDARY_HPP
#define SEGDIST_BOUNDARY_HPP

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "segdist/grid.hpp"

namespace segdist {

enum class BoundaryMode {
    ErodeFace,            // mask AND NOT erode(mask, cross element)
    ErodeFull,            // mask AND NOT erode(mask, 3^d box element)
    Interface,            // face centers between foreground and background
    ForegroundAll,        // every foreground center
    ForegroundNonOverlap  // pairwise: centers of A\B resp. B\A
};

inline std::string to_string(BoundaryMode m) {
    switch (m) {
        case BoundaryMode::ErodeFace: return "erode-face";
        case BoundaryMode::ErodeFull: return "erode-full";
        case BoundaryMode::Interface: return "interface";
        case BoundaryMode::ForegroundAll: return "foreground-all";
        case BoundaryMode::ForegroundNonOverlap: return "foreground-nonoverlap";
    }
    return "?";
}

// Finite set of physical query points (mm). `cells` holds the linear grid
// index per point for modes whose points are element centers; empty for
// Interface, whose points sit on faces.
struct BoundarySet {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    std::vector<std::size_t> cells;

    std::size_t count() const { return points.size(); }
    bool empty() const { return points.empty(); }
    bool on_cell_centers() const { return cells.size() == points.size(); }
};

namespace detail {

inline std::array<double, 3> center_of(const GridMask& m, const std::vector<double>& spacing,
                                       const std::array<int, 3>& idx) {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (int a = 0; a < m.rank(); ++a) p[a] = double(idx[a]) * spacing[a];
    return p;
}

// Is `idx+off` background (outside-grid counts as background)?
inline bool neighbor_background(const GridMask& m, std::array<int, 3> idx,
                                const std::array<int, 3>& off) {
    for (int a = 0; a < m.rank(); ++a) idx[a] += off[a];
    if (!m.in_bounds(idx)) return true;
    return !m.at(idx);
}

}  // namespace detail

// Boundary = mask AND NOT erode(mask). Face connectivity uses the
// orthogonal cross, full connectivity the complete 3^d box; outside-grid
// is background, so border-touching foreground is boundary.
inline BoundarySet extract_erode(const GridMask& mask, bool full_connectivity,
                                 const std::vector<double>& spacing) {
    BoundarySet out;
    const int r = mask.rank();
    const std::size_t n = mask.size();

    std::vector<std::array<int, 3>> offsets;
    if (full_connectivity) {
        const int zlo = (r == 3) ? -1 : 0, zhi = (r == 3) ? 1 : 0;
        for (int dz = zlo; dz <= zhi; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    offsets.push_back({dx, dy, dz});
                }
    } else {
        for (int a = 0; a < r; ++a) {
            std::array<int, 3> off{0, 0, 0};
            off[a] = 1;
            offsets.push_back(off);
            off[a] = -1;
            offsets.push_back(off);
        }
    }

    for (std::size_t lin = 0; lin < n; ++lin) {
        if (!mask.data[lin]) continue;
        const std::array<int, 3> idx = mask.unravel(lin);
        bool boundary = false;
        for (const auto& off : offsets) {
            if (detail::neighbor_background(mask, idx, off)) {
                boundary = true;
                break;
            }
        }
        if (boundary) {
            out.points.push_back(detail::center_of(mask, spacing, idx));
            out.weights.push_back(1.0);
            out.cells.push_back(lin);
        }
    }
    return out;
}

inline BoundarySet extract_erode(const GridMask& mask, bool full_connectivity) {
    return extract_erode(mask, full_connectivity, mask.spacing);
}

// One point per grid face separating foreground from background (grid
// border faces included). Point = face center, weight = physical face
// measure: the tangent spacing in 2D, product of the two tangent spacings
// in 3D.
inline BoundarySet extract_interface(const GridMask& mask, const std::vector<double>& spacing) {
    BoundarySet out;
    const int r = mask.rank();
    const std::size_t n = mask.size();

    std::array<double, 3> face_measure{};
    for (int a = 0; a < r; ++a) {
        double w = 1.0;
        for (int t = 0; t < r; ++t)
            if (t != a) w *= spacing[t];
        face_measure[a] = w;
    }

    for (std::size_t lin = 0; lin < n; ++lin) {
        if (!mask.data[lin]) continue;
        const std::array<int, 3> idx = mask.unravel(lin);
        for (int a = 0; a < r; ++a) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                std::array<int, 3> off{0, 0, 0};
                off[a] = sgn;
                if (!detail::neighbor_background(mask, idx, off)) continue;
                std::array<double, 3> p = detail::center_of(mask, spacing, idx);
                p[a] += 0.5 * double(sgn) * spacing[a];
                out.points.push_back(p);
                out.weights.push_back(face_measure[a]);
            }
        }
    }
    return out;
}

inline BoundarySet extract_interface(const GridMask& mask) {
    return extract_interface(mask, mask.spacing);
}

inline BoundarySet extract_foreground(const GridMask& mask, const std::vector<double>& spacing) {
    BoundarySet out;
    const std::size_t n = mask.size();
    for (std::size_t lin = 0; lin < n; ++lin) {
        if (!mask.data[lin]) continue;
        out.points.push_back(detail::center_of(mask, spacing, mask.unravel(lin)));
        out.weights.push_back(1.0);
        out.cells.push_back(lin);
    }
    return out;
}

inline BoundarySet extract_foreground(const GridMask& mask) {
    return extract_foreground(mask, mask.spacing);
}

// Pairwise extraction. ForegroundNonOverlap needs both masks (A\B, B\A);
// every other mode delegates to the per-mask extractor.
inline std::pair<BoundarySet, BoundarySet> extract_pair(const GridMask& a, const GridMask& b,
                                                        BoundaryMode mode,
                                                        const std::vector<double>& spacing) {
    if (a.dims != b.dims)
        throw error("extract_pair requires masks on the same grid");
    switch (mode) {
        case BoundaryMode::ErodeFace:
            return {extract_erode(a, false, spacing), extract_erode(b, false, spacing)};
        case BoundaryMode::ErodeFull:
            return {extract_erode(a, true, spacing), extract_erode(b, true, spacing)};
        case BoundaryMode::Interface:
            return {extract_interface(a, spacing), extract_interface(b, spacing)};
        case BoundaryMode::ForegroundAll:
            return {extract_foreground(a, spacing), extract_foreground(b, spacing)};
        case BoundaryMode::ForegroundNonOverlap: {
            BoundarySet sa, sb;
            const std::size_t n = a.size();
            for (std::size_t lin = 0; lin < n; ++lin) {
                const bool fa = a.data[lin] != 0, fb = b.data[lin] != 0;
                if (fa == fb) continue;
                BoundarySet& dst = fa ? sa : sb;
                const GridMask& m = fa ? a : b;
                dst.points.push_back(detail::center_of(m, spacing, m.unravel(lin)));
                dst.weights.push_back(1.0);
                dst.cells.push_back(lin);
            }
            return {std::move(sa), std::move(sb)};
        }
    }
    throw error("unknown boundary mode");
}

inline std::pair<BoundarySet, BoundarySet> extract_pair(const GridMask& a, const GridMask& b,
                                                        BoundaryMode mode) {
    return extract_pair(a, b, mode, a.spacing);
}

}  // namespace segdist

#endif  // SEGDIST_BOUNDARY_HPP
