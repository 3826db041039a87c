// Exact Euclidean distance transform on anisotropic grids via the
// separable lower-envelope (parabola) method. No chamfer approximation.

#ifndef SEGDIST_EDT_HPP
#define SEGDIST_EDT_HPP

#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "segdist/grid.hpp"

namespace segdist {

enum class EdtPurpose { Boundary, Band };

namespace detail {

inline std::atomic<long>& edt_counter(EdtPurpose p) {
    static std::atomic<long> boundary{0};
    static std::atomic<long> band{0};
    return p == EdtPurpose::Boundary ? boundary : band;
}

}  // namespace detail

inline long edt_invocations(EdtPurpose p) { return detail::edt_counter(p).load(); }

inline void reset_edt_invocations() {
    detail::edt_counter(EdtPurpose::Boundary).store(0);
    detail::edt_counter(EdtPurpose::Band).store(0);
}

struct DistanceField {
    std::vector<int> dims;
    std::vector<double> spacing;
    std::vector<double> values;  // mm; +inf when the source set is empty

    double at(std::size_t lin) const { return values[lin]; }
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1D squared-distance transform over samples at positions i*step.
// f holds squared distances on input and output.
inline void dt_1d(double* f, int n, double step, std::vector<int>& v, std::vector<double>& z,
                  std::vector<double>& out) {
    v.resize(static_cast<std::size_t>(n));
    z.resize(static_cast<std::size_t>(n) + 1);
    out.resize(static_cast<std::size_t>(n));

    int first = -1;
    for (int q = 0; q < n; ++q)
        if (f[q] != kInf) {
            first = q;
            break;
        }
    if (first < 0) return;  // no finite input on this line

    int k = 0;
    v[0] = first;
    z[0] = -kInf;
    z[1] = kInf;
    const double s2 = step * step;
    for (int q = first + 1; q < n; ++q) {
        if (f[q] == kInf) continue;
        while (true) {
            const int p = v[static_cast<std::size_t>(k)];
            const double s =
                ((f[q] + s2 * double(q) * double(q)) - (f[p] + s2 * double(p) * double(p))) /
                (2.0 * s2 * double(q - p));
            if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
                --k;
                continue;
            }
            if (s <= z[static_cast<std::size_t>(k)]) {
                // Parabola q dominates everywhere; replace the sole entry.
                v[0] = q;
                break;
            }
            ++k;
            v[static_cast<std::size_t>(k)] = q;
            z[static_cast<std::size_t>(k)] = s;
            z[static_cast<std::size_t>(k) + 1] = kInf;
            break;
        }
    }

    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < double(q)) ++k;
        const int p = v[static_cast<std::size_t>(k)];
        const double d = step * double(q - p);
        out[static_cast<std::size_t>(q)] = d * d + f[p];
    }
    for (int q = 0; q < n; ++q) f[q] = out[static_cast<std::size_t>(q)];
}

}  // namespace detail

// Exact EDT: distance (mm) from every element center to the nearest
// source element center; source given as a nonzero byte per element.
// Empty source yields an infinity-filled field.
inline DistanceField edt(const std::vector<std::uint8_t>& source, const std::vector<int>& dims,
                         const std::vector<double>& spacing,
                         EdtPurpose purpose = EdtPurpose::Boundary) {
    const int r = static_cast<int>(dims.size());
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    if (source.size() != n) throw error("edt: source length does not match grid");
    detail::edt_counter(purpose).fetch_add(1);

    DistanceField field;
    field.dims = dims;
    field.spacing = spacing;
    field.values.assign(n, detail::kInf);
    for (std::size_t i = 0; i < n; ++i)
        if (source[i]) field.values[i] = 0.0;

    // Strides, last axis fastest.
    std::array<std::size_t, 3> stride{0, 0, 0};
    std::size_t s = 1;
    for (int a = r - 1; a >= 0; --a) {
        stride[static_cast<std::size_t>(a)] = s;
        s *= static_cast<std::size_t>(dims[static_cast<std::size_t>(a)]);
    }

    std::vector<int> v;
    std::vector<double> z, tmp, line;
    for (int a = 0; a < r; ++a) {
        const int len = dims[static_cast<std::size_t>(a)];
        if (len == 1) continue;
        const std::size_t st = stride[static_cast<std::size_t>(a)];
        const std::size_t lines = n / static_cast<std::size_t>(len);
        line.resize(static_cast<std::size_t>(len));
        for (std::size_t li = 0; li < lines; ++li) {
            // Base offset of this line: expand li over the remaining axes.
            std::size_t base = 0, rem = li;
            for (int b = r - 1; b >= 0; --b) {
                if (b == a) continue;
                const std::size_t db = static_cast<std::size_t>(dims[static_cast<std::size_t>(b)]);
                base += (rem % db) * stride[static_cast<std::size_t>(b)];
                rem /= db;
            }
            for (int q = 0; q < len; ++q)
                line[static_cast<std::size_t>(q)] = field.values[base + static_cast<std::size_t>(q) * st];
            detail::dt_1d(line.data(), len, spacing[static_cast<std::size_t>(a)], v, z, tmp);
            for (int q = 0; q < len; ++q)
                field.values[base + static_cast<std::size_t>(q) * st] = line[static_cast<std::size_t>(q)];
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        if (field.values[i] != detail::kInf) field.values[i] = std::sqrt(field.values[i]);
    return field;
}

}  // namespace segdist

#endif  // SEGDIST_EDT_HPP
