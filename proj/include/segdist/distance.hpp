// Directed distance sets between boundary point sets. Cell-centered sets
// read a grid EDT directly; interface sets (points on faces) use an exact
// EDT on a half-step refined grid whose lattice contains both element
// centers and face centers.

#ifndef SEGDIST_DISTANCE_HPP
#define SEGDIST_DISTANCE_HPP

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "segdist/boundary.hpp"
#include "segdist/edt.hpp"
#include "segdist/grid.hpp"

namespace segdist {

struct DistanceSet {
    std::vector<double> distances;  // mm, may contain +inf
    std::vector<double> weights;    // carried from the query set
    std::string direction;          // "AB" or "BA"

    std::size_t count() const { return distances.size(); }
    bool empty() const { return distances.empty(); }
};

// Grid-sampled lookup: valid when the query points are element centers of
// the field's grid.
inline DistanceSet directed_from_field(const BoundarySet& from, const DistanceField& field,
                                       std::string direction) {
    if (!from.on_cell_centers())
        throw error("directed_from_field requires cell-centered query points");
    DistanceSet out;
    out.direction = std::move(direction);
    out.distances.reserve(from.count());
    for (std::size_t c : from.cells) out.distances.push_back(field.at(c));
    out.weights = from.weights;
    return out;
}

// Exact point-to-point minima, O(N*M). Used by small cases and as the
// reference route in tests.
inline DistanceSet directed_exact(const BoundarySet& from, const BoundarySet& to,
                                  std::string direction) {
    DistanceSet out;
    out.direction = std::move(direction);
    out.weights = from.weights;
    out.distances.reserve(from.count());
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& p : from.points) {
        double best = inf;
        for (const auto& q : to.points) {
            const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
            const double d2 = dx * dx + dy * dy + dz * dz;
            if (d2 < best) best = d2;
        }
        out.distances.push_back(best == inf ? inf : std::sqrt(best));
    }
    return out;
}

namespace detail {

// Refined lattice: position along axis a is -spacing/2 + k*(spacing/2),
// k in [0, 2*dims]. Element center i maps to k=2i+1, face centers to 2i
// and 2i+2, so every interface and every center point is a lattice point.
inline std::size_t refined_index(const std::array<double, 3>& p, const std::vector<int>& dims,
                                 const std::vector<double>& spacing,
                                 const std::vector<int>& rdims) {
    const int r = static_cast<int>(dims.size());
    std::size_t lin = 0;
    for (int a = 0; a < r; ++a) {
        const double half = 0.5 * spacing[static_cast<std::size_t>(a)];
        const long k = std::llround(p[static_cast<std::size_t>(a)] / half + 1.0);
        if (k < 0 || k >= rdims[static_cast<std::size_t>(a)])
            throw error("refined-grid point outside lattice");
        lin = lin * static_cast<std::size_t>(rdims[static_cast<std::size_t>(a)]) +
              static_cast<std::size_t>(k);
    }
    return lin;
}

}  // namespace detail

// Exact minima via EDT on the half-step refined grid. Requires every
// point of both sets to lie on the refined lattice (element centers and
// face centers of the given grid do).
inline DistanceSet directed_refined(const BoundarySet& from, const BoundarySet& to,
                                    const std::vector<int>& dims,
                                    const std::vector<double>& spacing, std::string direction) {
    const int r = static_cast<int>(dims.size());
    std::vector<int> rdims(static_cast<std::size_t>(r));
    std::vector<double> rspacing(static_cast<std::size_t>(r));
    std::size_t n = 1;
    for (int a = 0; a < r; ++a) {
        rdims[static_cast<std::size_t>(a)] = 2 * dims[static_cast<std::size_t>(a)] + 1;
        rspacing[static_cast<std::size_t>(a)] = 0.5 * spacing[static_cast<std::size_t>(a)];
        n *= static_cast<std::size_t>(rdims[static_cast<std::size_t>(a)]);
    }

    DistanceSet out;
    out.direction = std::move(direction);
    out.weights = from.weights;
    if (to.empty()) {
        out.distances.assign(from.count(), std::numeric_limits<double>::infinity());
        return out;
    }

    std::vector<std::uint8_t> source(n, 0);
    for (const auto& q : to.points) source[detail::refined_index(q, dims, spacing, rdims)] = 1;
    const DistanceField field = edt(source, rdims, rspacing, EdtPurpose::Boundary);

    out.distances.reserve(from.count());
    for (const auto& p : from.points)
        out.distances.push_back(field.at(detail::refined_index(p, dims, spacing, rdims)));
    return out;
}

}  // namespace segdist

#endif  // SEGDIST_DISTANCE_HPP
