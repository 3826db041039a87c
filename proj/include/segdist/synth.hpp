// Seeded synthetic mask-pair generator: smoothed-noise blobs thresholded
// to a connected foreground, plus perturbed copies (threshold jitter,
// random shift, boundary flips) as predictions.

#ifndef SEGDIST_SYNTH_HPP
#define SEGDIST_SYNTH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "segdist/grid.hpp"

namespace segdist {

// Deterministic splitmix64-based generator; avoids library distribution
// implementations so byte-identical output holds across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

struct GenParams {
    std::uint64_t seed = 1;
    int count = 10;
    std::vector<int> dims{64, 64};
    std::vector<double> spacing{1.0, 1.0};
    double level = 0.3;       // perturbation level, 0 = identical prediction
    double empty_frac = 0.0;  // fraction of pairs with an empty prediction
    int max_retries = 50;
};

struct PairEntry {
    std::string id;
    std::string ref_path;
    std::string pred_path;
    std::string tag;
};

struct GenResult {
    std::vector<PairEntry> pairs;
    std::filesystem::path manifest_path;
    double mean_dsc = 0.0;
};

namespace synth_detail {

inline void box_blur_axis(std::vector<double>& f, const std::vector<int>& dims, int axis,
                          int radius) {
    const int r = static_cast<int>(dims.size());
    std::array<std::size_t, 3> stride{0, 0, 0};
    std::size_t s = 1, n = 1;
    for (int a = r - 1; a >= 0; --a) {
        stride[static_cast<std::size_t>(a)] = s;
        s *= static_cast<std::size_t>(dims[static_cast<std::size_t>(a)]);
    }
    n = s;
    const int len = dims[static_cast<std::size_t>(axis)];
    const std::size_t st = stride[static_cast<std::size_t>(axis)];
    const std::size_t lines = n / static_cast<std::size_t>(len);
    std::vector<double> tmp(static_cast<std::size_t>(len));
    for (std::size_t li = 0; li < lines; ++li) {
        std::size_t base = 0, rem = li;
        for (int b = r - 1; b >= 0; --b) {
            if (b == axis) continue;
            const std::size_t db = static_cast<std::size_t>(dims[static_cast<std::size_t>(b)]);
            base += (rem % db) * stride[static_cast<std::size_t>(b)];
            rem /= db;
        }
        for (int q = 0; q < len; ++q) {
            double acc = 0.0;
            int cnt = 0;
            for (int d = -radius; d <= radius; ++d) {
                const int j = q + d;
                if (j < 0 || j >= len) continue;
                acc += f[base + static_cast<std::size_t>(j) * st];
                ++cnt;
            }
            tmp[static_cast<std::size_t>(q)] = acc / double(cnt);
        }
        for (int q = 0; q < len; ++q) f[base + static_cast<std::size_t>(q) * st] = tmp[static_cast<std::size_t>(q)];
    }
}

inline std::vector<double> smooth_noise(Rng& rng, const std::vector<int>& dims) {
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    std::vector<double> f(n);
    for (double& x : f) x = rng.uniform();
    const int min_dim = *std::min_element(dims.begin(), dims.end());
    const int radius = std::max(1, min_dim / 8);
    for (int pass = 0; pass < 2; ++pass)
        for (int a = 0; a < static_cast<int>(dims.size()); ++a) box_blur_axis(f, dims, a, radius);
    return f;
}

inline double quantile_value(std::vector<double> f, double q) {
    const std::size_t k = std::min(f.size() - 1, static_cast<std::size_t>(q * double(f.size())));
    std::nth_element(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k), f.end());
    return f[k];
}

// Keep only the largest face-connected foreground component.
inline void largest_component(GridMask& m) {
    const std::size_t n = m.size();
    std::vector<std::int32_t> comp(n, -1);
    std::int32_t ncomp = 0;
    std::vector<std::size_t> best_members, members;
    for (std::size_t start = 0; start < n; ++start) {
        if (!m.data[start] || comp[start] >= 0) continue;
        members.clear();
        std::deque<std::size_t> queue{start};
        comp[start] = ncomp;
        while (!queue.empty()) {
            const std::size_t cur = queue.front();
            queue.pop_front();
            members.push_back(cur);
            const std::array<int, 3> idx = m.unravel(cur);
            for (int a = 0; a < m.rank(); ++a)
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    std::array<int, 3> nb = idx;
                    nb[a] += sgn;
                    if (!m.in_bounds(nb)) continue;
                    const std::size_t lin = m.linear(nb);
                    if (m.data[lin] && comp[lin] < 0) {
                        comp[lin] = ncomp;
                        queue.push_back(lin);
                    }
                }
        }
        if (members.size() > best_members.size()) best_members = members;
        ++ncomp;
    }
    std::fill(m.data.begin(), m.data.end(), std::uint8_t{0});
    for (std::size_t lin : best_members) m.data[lin] = 1;
}

inline GridMask threshold_mask(const std::vector<double>& field, const std::vector<int>& dims,
                               const std::vector<double>& spacing, double thr) {
    GridMask m;
    m.dims = dims;
    m.spacing = spacing;
    m.data.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) m.data[i] = field[i] >= thr ? 1 : 0;
    largest_component(m);
    return m;
}

inline GridMask shift_mask(const GridMask& m, const std::array<int, 3>& shift) {
    GridMask out = m;
    std::fill(out.data.begin(), out.data.end(), std::uint8_t{0});
    const std::size_t n = m.size();
    for (std::size_t lin = 0; lin < n; ++lin) {
        if (!m.data[lin]) continue;
        std::array<int, 3> idx = m.unravel(lin);
        for (int a = 0; a < m.rank(); ++a) idx[a] += shift[a];
        if (out.in_bounds(idx)) out.data[out.linear(idx)] = 1;
    }
    return out;
}

inline void boundary_flips(GridMask& m, Rng& rng, double prob) {
    if (prob <= 0.0) return;
    const GridMask snapshot = m;
    const std::size_t n = m.size();
    for (std::size_t lin = 0; lin < n; ++lin) {
        const std::array<int, 3> idx = snapshot.unravel(lin);
        bool near_boundary = false;
        for (int a = 0; a < snapshot.rank() && !near_boundary; ++a)
            for (int sgn = -1; sgn <= 1 && !near_boundary; sgn += 2) {
                std::array<int, 3> nb = idx;
                nb[a] += sgn;
                const bool nb_fg = snapshot.in_bounds(nb) && snapshot.at(nb);
                if (nb_fg != (snapshot.data[lin] != 0)) near_boundary = true;
            }
        if (near_boundary && rng.uniform() < prob) m.data[lin] ^= 1;
    }
}

inline bool overlaps(const GridMask& a, const GridMask& b) {
    for (std::size_t i = 0; i < a.data.size(); ++i)
        if (a.data[i] & b.data[i]) return true;
    return false;
}

}  // namespace synth_detail

struct MaskPair {
    GridMask ref;
    GridMask pred;
};

// One deterministic pair for the given seed/index.
inline MaskPair gen_pair(const GenParams& params, int index, bool empty_pred) {
    using namespace synth_detail;
    Rng rng(params.seed * 0x5851f42d4c957f2dULL + static_cast<std::uint64_t>(index) + 1);

    const double q = 0.70;
    const int min_dim = *std::min_element(params.dims.begin(), params.dims.end());

    for (int attempt = 0; attempt < params.max_retries; ++attempt) {
        const std::vector<double> field = smooth_noise(rng, params.dims);
        const double thr = quantile_value(field, q);
        GridMask ref = threshold_mask(field, params.dims, params.spacing, thr);
        if (ref.empty_mask()) continue;

        if (empty_pred) {
            GridMask pred = ref;
            std::fill(pred.data.begin(), pred.data.end(), std::uint8_t{0});
            return {std::move(ref), std::move(pred)};
        }
        if (params.level <= 0.0) {
            GridMask pred = ref;
            return {std::move(ref), std::move(pred)};
        }

        const double jitter = params.level * 0.1 * (rng.uniform() - 0.5);
        const double pthr = quantile_value(field, std::clamp(q + jitter, 0.05, 0.95));
        GridMask pred = threshold_mask(field, params.dims, params.spacing, pthr);

        const int max_shift = std::max(1, static_cast<int>(std::lround(params.level * min_dim / 8.0)));
        std::array<int, 3> shift{0, 0, 0};
        for (int a = 0; a < static_cast<int>(params.dims.size()); ++a)
            shift[a] = rng.uniform_int(-max_shift, max_shift);
        pred = shift_mask(pred, shift);
        boundary_flips(pred, rng, 0.2 * params.level);
        largest_component(pred);

        if (!pred.empty_mask() && overlaps(ref, pred)) return {std::move(ref), std::move(pred)};
    }
    throw error("pair generation failed after " + std::to_string(params.max_retries) +
                " attempts (constraints unsatisfiable)");
}

// Generate the dataset on disk and write a manifest CSV {id,ref,pred,tag}.
inline GenResult gen_dataset(const GenParams& params, const std::filesystem::path& out_dir) {
    if (params.count < 1) throw error("count must be >= 1");
    std::filesystem::create_directories(out_dir);

    GenResult result;
    double dsc_sum = 0.0;
    int dsc_n = 0;
    for (int i = 0; i < params.count; ++i) {
        // Deterministic empty-prediction designation by index.
        const bool empty_pred =
            params.empty_frac > 0.0 &&
            (double(i) + 0.5) / double(params.count) < params.empty_frac;
        MaskPair pair = gen_pair(params, i, empty_pred);

        char id[32];
        std::snprintf(id, sizeof(id), "pair_%04d", i);
        const std::filesystem::path ref_path = out_dir / (std::string(id) + "_ref.hdr");
        const std::filesystem::path pred_path = out_dir / (std::string(id) + "_pred.hdr");
        save_mask(pair.ref, ref_path);
        save_mask(pair.pred, pred_path);

        if (!empty_pred) {
            std::size_t inter = 0, ca = 0, cb = 0;
            for (std::size_t k = 0; k < pair.ref.data.size(); ++k) {
                ca += pair.ref.data[k];
                cb += pair.pred.data[k];
                inter += (pair.ref.data[k] & pair.pred.data[k]);
            }
            dsc_sum += 2.0 * double(inter) / double(ca + cb);
            ++dsc_n;
        }
        result.pairs.push_back(
            {id, ref_path.string(), pred_path.string(), empty_pred ? "empty-pred" : "normal"});
    }
    result.mean_dsc = dsc_n > 0 ? dsc_sum / double(dsc_n) : 0.0;

    result.manifest_path = out_dir / "manifest.csv";
    std::ofstream mf(result.manifest_path, std::ios::trunc);
    if (!mf) throw error("cannot write manifest: " + result.manifest_path.string());
    char stat[64];
    std::snprintf(stat, sizeof(stat), "# mean_dsc %.9g\n", result.mean_dsc);
    mf << stat << "id,ref,pred,tag\n";
    for (const PairEntry& e : result.pairs)
        mf << e.id << ',' << e.ref_path << ',' << e.pred_path << ',' << e.tag << '\n';
    return result;
}

}  // namespace segdist

#endif  // SEGDIST_SYNTH_HPP
