// Binary masks on regular 2D/3D grids with physical element spacing,
// minimal header+raw file IO, nearest-neighbor resampling and joint
// bounding-box cropping.

#ifndef SEGDIST_GRID_HPP
#define SEGDIST_GRID_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace segdist {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Row-major binary mask; last axis fastest. Element (0,...,0) has its
// center at the physical origin, element i at i*spacing per axis.
struct GridMask {
    std::vector<int> dims;            // 2 or 3 positive extents
    std::vector<double> spacing;      // mm, all > 0
    std::vector<std::uint8_t> data;   // one byte per element, 0 or 1
    std::string label;

    int rank() const { return static_cast<int>(dims.size()); }

    std::size_t size() const {
        std::size_t n = 1;
        for (int d : dims) n *= static_cast<std::size_t>(d);
        return n;
    }

    std::size_t linear(const std::array<int, 3>& idx) const {
        std::size_t lin = 0;
        for (int a = 0; a < rank(); ++a)
            lin = lin * static_cast<std::size_t>(dims[a]) + static_cast<std::size_t>(idx[a]);
        return lin;
    }

    std::array<int, 3> unravel(std::size_t lin) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int a = rank() - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(lin % static_cast<std::size_t>(dims[a]));
            lin /= static_cast<std::size_t>(dims[a]);
        }
        return idx;
    }

    bool in_bounds(const std::array<int, 3>& idx) const {
        for (int a = 0; a < rank(); ++a)
            if (idx[a] < 0 || idx[a] >= dims[a]) return false;
        return true;
    }

    bool at(const std::array<int, 3>& idx) const { return data[linear(idx)] != 0; }

    std::size_t foreground_count() const {
        return static_cast<std::size_t>(std::count(data.begin(), data.end(), std::uint8_t{1}));
    }

    bool empty_mask() const { return foreground_count() == 0; }

    void validate() const {
        if (dims.size() != 2 && dims.size() != 3)
            throw error("mask must be 2D or 3D, got rank " + std::to_string(dims.size()));
        if (spacing.size() != dims.size())
            throw error("dims/spacing rank mismatch");
        for (int d : dims)
            if (d <= 0) throw error("non-positive dimension " + std::to_string(d));
        for (double s : spacing)
            if (!(s > 0.0)) throw error("non-positive spacing " + std::to_string(s));
        if (data.size() != size())
            throw error("data length " + std::to_string(data.size()) +
                        " does not match element count " + std::to_string(size()));
    }
};

inline std::filesystem::path raw_path_for(const std::filesystem::path& header_path) {
    std::filesystem::path p = header_path;
    p.replace_extension(".raw");
    return p;
}

// Header file: flat key/value lines. Keys: dims, spacing, dtype ("uint8"),
// order ("C"), optional label. Raw companion: one byte per element.
inline GridMask load_mask(const std::filesystem::path& header_path) {
    std::ifstream hdr(header_path);
    if (!hdr) throw error("cannot open header file: " + header_path.string());

    GridMask m;
    std::string dtype, order;
    std::string line;
    while (std::getline(hdr, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key.empty() || key[0] == '#') continue;
        if (key == "dims") {
            int v;
            while (ls >> v) m.dims.push_back(v);
        } else if (key == "spacing") {
            double v;
            while (ls >> v) m.spacing.push_back(v);
        } else if (key == "dtype") {
            ls >> dtype;
        } else if (key == "order") {
            ls >> order;
        } else if (key == "label") {
            std::string rest;
            std::getline(ls, rest);
            auto pos = rest.find_first_not_of(" \t");
            m.label = (pos == std::string::npos) ? "" : rest.substr(pos);
        } else {
            throw error("unknown header key '" + key + "' in " + header_path.string());
        }
    }
    if (dtype != "uint8") throw error("header dtype must be 'uint8', got '" + dtype + "'");
    if (order != "C") throw error("header order must be 'C', got '" + order + "'");
    if (m.dims.size() != 2 && m.dims.size() != 3)
        throw error("header dims must have 2 or 3 entries");

    const std::filesystem::path raw = raw_path_for(header_path);
    std::ifstream rf(raw, std::ios::binary);
    if (!rf) throw error("cannot open raw file: " + raw.string());
    rf.seekg(0, std::ios::end);
    const auto actual = static_cast<std::size_t>(rf.tellg());
    rf.seekg(0, std::ios::beg);

    std::size_t expected = 1;
    for (int d : m.dims) expected *= static_cast<std::size_t>(d);
    if (actual != expected)
        throw error("raw file length mismatch for " + raw.string() + ": expected " +
                    std::to_string(expected) + " bytes, got " + std::to_string(actual));

    m.data.resize(expected);
    rf.read(reinterpret_cast<char*>(m.data.data()), static_cast<std::streamsize>(expected));
    for (std::size_t i = 0; i < m.data.size(); ++i)
        if (m.data[i] > 1)
            throw error("raw byte at index " + std::to_string(i) + " is " +
                        std::to_string(int(m.data[i])) + ", expected 0 or 1");
    m.validate();
    return m;
}

inline void save_mask(const GridMask& mask, const std::filesystem::path& header_path) {
    mask.validate();
    std::ofstream hdr(header_path, std::ios::trunc);
    if (!hdr) throw error("cannot write header file: " + header_path.string());
    hdr << "dims";
    for (int d : mask.dims) hdr << ' ' << d;
    hdr << "\nspacing";
    hdr.precision(17);
    for (double s : mask.spacing) hdr << ' ' << s;
    hdr << "\ndtype uint8\norder C\n";
    if (!mask.label.empty()) hdr << "label " << mask.label << "\n";
    if (!hdr) throw error("write failure on " + header_path.string());

    const std::filesystem::path raw = raw_path_for(header_path);
    std::ofstream rf(raw, std::ios::binary | std::ios::trunc);
    if (!rf) throw error("cannot write raw file: " + raw.string());
    rf.write(reinterpret_cast<const char*>(mask.data.data()),
             static_cast<std::streamsize>(mask.data.size()));
    if (!rf) throw error("write failure on " + raw.string());
}

// Nearest input index to physical coordinate x on a line with step s;
// exact midpoints resolve toward the lower index.
inline int nn_index(double x, double s, int n) {
    const int i = static_cast<int>(std::ceil(x / s - 0.5));
    return std::clamp(i, 0, n - 1);
}

inline GridMask resample_nn(const GridMask& mask, const std::vector<double>& target_spacing) {
    mask.validate();
    if (target_spacing.size() != mask.spacing.size())
        throw error("target spacing rank mismatch");
    for (double s : target_spacing)
        if (!(s > 0.0)) throw error("non-positive target spacing");

    const int r = mask.rank();
    GridMask out;
    out.spacing = target_spacing;
    out.label = mask.label;
    out.dims.resize(r);
    for (int a = 0; a < r; ++a) {
        const double extent = double(mask.dims[a]) * mask.spacing[a] / target_spacing[a];
        out.dims[a] = std::max(1, static_cast<int>(std::llround(extent)));
    }
    out.data.resize(out.size());

    // Precompute source index per output index per axis.
    std::array<std::vector<int>, 3> map;
    for (int a = 0; a < r; ++a) {
        map[a].resize(static_cast<std::size_t>(out.dims[a]));
        for (int j = 0; j < out.dims[a]; ++j)
            map[a][static_cast<std::size_t>(j)] =
                nn_index(double(j) * target_spacing[a], mask.spacing[a], mask.dims[a]);
    }

    const std::size_t n = out.size();
    for (std::size_t lin = 0; lin < n; ++lin) {
        std::array<int, 3> j = out.unravel(lin);
        std::array<int, 3> i{0, 0, 0};
        for (int a = 0; a < r; ++a) i[a] = map[a][static_cast<std::size_t>(j[a])];
        out.data[lin] = mask.data[mask.linear(i)];
    }
    return out;
}

struct CropResult {
    GridMask a;
    GridMask b;
    std::array<int, 3> offset{0, 0, 0};  // index of cropped origin in the original grid
    bool inputs_empty = false;           // both masks had no foreground
};

// Crop both masks to the union of their foreground bounding boxes expanded
// by `margin` elements (clamped to the grid).
inline CropResult crop_joint(const GridMask& a, const GridMask& b, int margin = 1) {
    a.validate();
    b.validate();
    if (a.dims != b.dims || a.spacing != b.spacing)
        throw error("crop_joint requires masks on the same grid");
    const int r = a.rank();

    std::array<int, 3> lo{0, 0, 0}, hi{-1, -1, -1};
    bool any = false;
    const std::size_t n = a.size();
    for (std::size_t lin = 0; lin < n; ++lin) {
        if (!a.data[lin] && !b.data[lin]) continue;
        std::array<int, 3> idx = a.unravel(lin);
        if (!any) {
            lo = idx;
            hi = idx;
            any = true;
        } else {
            for (int ax = 0; ax < r; ++ax) {
                lo[ax] = std::min(lo[ax], idx[ax]);
                hi[ax] = std::max(hi[ax], idx[ax]);
            }
        }
    }

    CropResult res;
    if (!any) {
        // Degenerate single-element crops, flagged.
        res.inputs_empty = true;
        lo.fill(0);
        hi.fill(0);
    } else {
        for (int ax = 0; ax < r; ++ax) {
            lo[ax] = std::max(0, lo[ax] - margin);
            hi[ax] = std::min(a.dims[ax] - 1, hi[ax] + margin);
        }
    }

    GridMask ca, cb;
    ca.spacing = a.spacing;
    cb.spacing = b.spacing;
    ca.label = a.label;
    cb.label = b.label;
    for (int ax = 0; ax < r; ++ax) {
        ca.dims.push_back(hi[ax] - lo[ax] + 1);
        res.offset[ax] = lo[ax];
    }
    cb.dims = ca.dims;
    ca.data.resize(ca.size());
    cb.data.resize(cb.size());
    const std::size_t cn = ca.size();
    for (std::size_t lin = 0; lin < cn; ++lin) {
        std::array<int, 3> idx = ca.unravel(lin);
        for (int ax = 0; ax < r; ++ax) idx[ax] += lo[ax];
        const std::size_t src = a.linear(idx);
        ca.data[lin] = a.data[src];
        cb.data[lin] = b.data[src];
    }
    res.a = std::move(ca);
    res.b = std::move(cb);
    return res;
}

}  // namespace segdist

#endif  // SEGDIST_GRID_HPP
